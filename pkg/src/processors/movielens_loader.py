"""
movielens_loader.py - Lectura y escritura de los formatos nativos de MovieLens

100K: u.data (tabulado), u.user y u.item (separados por '|', latin-1).
1M: ratings.dat, users.dat y movies.dat separados por '::'.

Los géneros de ambas distribuciones se proyectan sobre la misma lista
canónica de 19 géneros para que los modelos sean transferibles.
"""

import csv
import logging
import re
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from config import (
    CANONICAL_GENRES, ML100K_ENCODING, ML100K_FILES, ML1M_AGE_CODES, ML1M_ENCODING,
    ML1M_FILES, ML1M_OCCUPATIONS, ML1M_SEPARATOR,
)
from src.processors.dataset import (
    MOVIE_COLUMNS, RATING_COLUMNS, USER_COLUMNS, Dataset, canonical_genres,
)
from src.utils.exceptions import DataLoadError

logger = logging.getLogger(__name__)

_LINE_PATTERN = re.compile(r"line (\d+)")


# ============================================
# LECTURA GENÉRICA CON NÚMERO DE LÍNEA
# ============================================
def _read_table(path: Path, separator: str, columns: List[str], encoding: str) -> pd.DataFrame:
    """
    Lee un archivo delimitado con todas las columnas como texto.

    Raises:
        DataLoadError: archivo inexistente o línea con número de campos incorrecto
    """
    if not path.exists():
        logger.error(f"❌ Archivo no encontrado: {path}")
        raise DataLoadError(str(path), reason="El archivo no existe en la ubicación especificada")

    # Separadores de varios caracteres requieren el motor python
    engine = "c" if len(separator) == 1 else "python"
    try:
        frame = pd.read_csv(
            path, sep=separator, header=None, names=columns, dtype=str,
            encoding=encoding, engine=engine, quoting=csv.QUOTE_NONE,
            keep_default_na=False, na_filter=True, na_values=[],
            skip_blank_lines=True, on_bad_lines="error",
        )
    except pd.errors.ParserError as e:
        match = _LINE_PATTERN.search(str(e))
        raise DataLoadError(
            str(path), reason="Número de campos incorrecto",
            line_number=int(match.group(1)) if match else None, original_error=e,
        )
    except (OSError, UnicodeDecodeError) as e:
        raise DataLoadError(str(path), reason=f"No se pudo leer el archivo: {e}", original_error=e)

    if not isinstance(frame.index, pd.RangeIndex):
        # pandas toma un campo sobrante en la primera línea como índice implícito
        raise DataLoadError(str(path), reason="Número de campos incorrecto", line_number=1)

    missing = frame.isna().any(axis=1)
    if missing.any():
        raise DataLoadError(str(path), reason="Faltan campos en el registro",
                            line_number=int(np.flatnonzero(missing.to_numpy())[0]) + 1)
    return frame


def _integer_column(frame: pd.DataFrame, column: str, path: Path) -> pd.Series:
    """Convierte una columna de texto a entero reportando la primera línea inválida"""
    values = pd.to_numeric(frame[column].str.strip(), errors="coerce")
    invalid = values.isna() | (values != values.round())
    if invalid.any():
        line = int(np.flatnonzero(invalid.to_numpy())[0]) + 1
        raise DataLoadError(str(path), reason=f"Valor no entero en la columna '{column}': "
                            f"'{frame[column].iloc[line - 1]}'", line_number=line)
    return values.astype(np.int64)


def _check_codes(codes: pd.Series, known, field: str, path: Path):
    unknown = ~codes.isin(list(known))
    if unknown.any():
        line = int(np.flatnonzero(unknown.to_numpy())[0]) + 1
        raise DataLoadError(str(path), reason=f"Código de {field} desconocido: {codes.iloc[line - 1]}", line_number=line)


def _finish_ratings(frame: pd.DataFrame, path: Path) -> pd.DataFrame:
    ratings = pd.DataFrame({
        "user_id": _integer_column(frame, "user_id", path),
        "movie_id": _integer_column(frame, "movie_id", path),
        "rating": _integer_column(frame, "rating", path).astype(np.float64),
        "timestamp": _integer_column(frame, "timestamp", path),
    })
    return ratings.reset_index(drop=True)


# ============================================
# MOVIELENS 100K
# ============================================
def load_ml100k(directory) -> Dataset:
    """
    Carga la distribución MovieLens 100K desde un directorio local.

    Args:
        directory: Directorio con u.data, u.user y u.item

    Returns:
        Dataset con procedencia "ml100k"

    Raises:
        DataLoadError: archivo faltante o línea mal formada (con número de línea)
    """
    directory = Path(directory)
    start_time = datetime.now()
    logger.info(f"Cargando MovieLens 100K desde: {directory}")

    ratings_path = directory / ML100K_FILES["ratings"]
    raw = _read_table(ratings_path, "\t", RATING_COLUMNS, ML100K_ENCODING)
    ratings = _finish_ratings(raw, ratings_path)

    users_path = directory / ML100K_FILES["users"]
    raw = _read_table(users_path, "|", ["user_id", "age", "gender", "occupation", "zip"], ML100K_ENCODING)
    users = pd.DataFrame({
        "user_id": _integer_column(raw, "user_id", users_path),
        "age": _integer_column(raw, "age", users_path),
        "gender": raw["gender"],
        "occupation": raw["occupation"],
        "zip": raw["zip"],
    })[USER_COLUMNS]

    items_path = directory / ML100K_FILES["items"]
    flag_columns = [f"genre_{position}" for position in range(len(CANONICAL_GENRES))]
    raw = _read_table(items_path, "|", MOVIE_COLUMNS[:-1] + flag_columns, ML100K_ENCODING)
    flags = np.column_stack([_integer_column(raw, column, items_path).to_numpy() for column in flag_columns])
    bad_flag = ~np.isin(flags, (0, 1)).all(axis=1)
    if bad_flag.any():
        raise DataLoadError(str(items_path), reason="Las columnas de género deben ser 0 o 1",
                            line_number=int(np.flatnonzero(bad_flag)[0]) + 1)
    genres = [canonical_genres(CANONICAL_GENRES[k] for k in np.flatnonzero(row)) for row in flags]
    movies = pd.DataFrame({
        "movie_id": _integer_column(raw, "movie_id", items_path),
        "title": raw["title"],
        "release_date": raw["release_date"],
        "video_release_date": raw["video_release_date"],
        "imdb_url": raw["imdb_url"],
        "genres": genres,
    })[MOVIE_COLUMNS]

    dataset = Dataset(ratings, users.reset_index(drop=True), movies.reset_index(drop=True),
                      "ml100k", source_dir=directory)
    elapsed = (datetime.now() - start_time).total_seconds()
    logger.info(f"✓ ML-100K: {len(users)} usuarios, {len(movies)} películas, "
                f"{len(ratings)} ratings ({elapsed:.2f} s)")
    return dataset


def write_ml100k(dataset: Dataset, directory) -> Path:
    """Serializa el dataset en el formato nativo de 100K (u.data, u.user, u.item)"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    ratings = dataset.ratings.copy()
    ratings["rating"] = ratings["rating"].round().astype(np.int64)
    ratings[RATING_COLUMNS].to_csv(directory / ML100K_FILES["ratings"], sep="\t", header=False,
                                   index=False, encoding=ML100K_ENCODING)

    dataset.users[USER_COLUMNS].to_csv(directory / ML100K_FILES["users"], sep="|", header=False,
                                       index=False, encoding=ML100K_ENCODING, quoting=csv.QUOTE_NONE)

    items = dataset.movies[MOVIE_COLUMNS[:-1]].copy()
    for position, name in enumerate(CANONICAL_GENRES):
        items[f"genre_{position}"] = [int(name in genres) for genres in dataset.movies["genres"]]
    items.to_csv(directory / ML100K_FILES["items"], sep="|", header=False, index=False,
                 encoding=ML100K_ENCODING, quoting=csv.QUOTE_NONE)

    logger.info(f"Dataset escrito en formato 100K: {directory}")
    return directory


# ============================================
# MOVIELENS 1M
# ============================================
def _parse_ml1m_genres(values: pd.Series, path: Path) -> List[tuple]:
    result = []
    for line, text in enumerate(values, start=1):
        names = [name for name in text.split("|") if name]
        try:
            result.append(canonical_genres(names))
        except KeyError as e:
            raise DataLoadError(str(path), reason=f"Género desconocido {e}", line_number=line)
    return result


def load_ml1m(directory) -> Dataset:
    """
    Carga la distribución MovieLens 1M desde un directorio local.

    La edad publicada como código de rango se guarda como el límite inferior
    del rango; la ocupación se guarda como código de dos dígitos.

    Raises:
        DataLoadError: archivo faltante, registro mal formado, código de edad
            o género desconocido (con número de línea)
    """
    directory = Path(directory)
    start_time = datetime.now()
    logger.info(f"Cargando MovieLens 1M desde: {directory}")

    ratings_path = directory / ML1M_FILES["ratings"]
    raw = _read_table(ratings_path, ML1M_SEPARATOR, RATING_COLUMNS, ML1M_ENCODING)
    ratings = _finish_ratings(raw, ratings_path)

    users_path = directory / ML1M_FILES["users"]
    raw = _read_table(users_path, ML1M_SEPARATOR, ["user_id", "gender", "age", "occupation", "zip"], ML1M_ENCODING)
    age_codes = _integer_column(raw, "age", users_path)
    _check_codes(age_codes, ML1M_AGE_CODES, "edad", users_path)
    occupations = _integer_column(raw, "occupation", users_path)
    _check_codes(occupations, ML1M_OCCUPATIONS, "ocupación", users_path)
    users = pd.DataFrame({
        "user_id": _integer_column(raw, "user_id", users_path),
        "age": age_codes.map(ML1M_AGE_CODES).astype(np.int64),
        "gender": raw["gender"],
        "occupation": occupations.map(lambda code: f"{code:02d}"),
        "zip": raw["zip"],
    })[USER_COLUMNS]

    movies_path = directory / ML1M_FILES["items"]
    raw = _read_table(movies_path, ML1M_SEPARATOR, ["movie_id", "title", "genres"], ML1M_ENCODING)
    movies = pd.DataFrame({
        "movie_id": _integer_column(raw, "movie_id", movies_path),
        "title": raw["title"],
        "release_date": "",
        "video_release_date": "",
        "imdb_url": "",
        "genres": _parse_ml1m_genres(raw["genres"], movies_path),
    })[MOVIE_COLUMNS]

    dataset = Dataset(ratings, users.reset_index(drop=True), movies.reset_index(drop=True),
                      "ml1m", source_dir=directory)
    elapsed = (datetime.now() - start_time).total_seconds()
    logger.info(f"✓ ML-1M: {len(users)} usuarios, {len(movies)} películas, "
                f"{len(ratings)} ratings ({elapsed:.2f} s)")
    return dataset


def _write_double_colon(frame: pd.DataFrame, path: Path):
    # pandas solo escribe separadores de un carácter
    lines = [ML1M_SEPARATOR.join(str(value) for value in row) for row in frame.itertuples(index=False)]
    path.write_text("".join(line + "\n" for line in lines), encoding=ML1M_ENCODING)


def write_ml1m(dataset: Dataset, directory) -> Path:
    """Serializa el dataset en el formato nativo de 1M (ratings.dat, users.dat, movies.dat)"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    lower_bound_to_code: Dict[int, int] = {bound: code for code, bound in ML1M_AGE_CODES.items()}

    ratings = dataset.ratings.copy()
    ratings["rating"] = ratings["rating"].round().astype(np.int64)
    _write_double_colon(ratings[RATING_COLUMNS], directory / ML1M_FILES["ratings"])

    users = pd.DataFrame({
        "user_id": dataset.users["user_id"],
        "gender": dataset.users["gender"],
        "age": dataset.users["age"].map(lambda age: lower_bound_to_code.get(int(age), int(age))),
        "occupation": dataset.users["occupation"].map(lambda token: int(token)),
        "zip": dataset.users["zip"],
    })
    _write_double_colon(users, directory / ML1M_FILES["users"])

    movies = pd.DataFrame({
        "movie_id": dataset.movies["movie_id"],
        "title": dataset.movies["title"],
        "genres": dataset.movies["genres"].map(lambda genres: "|".join(genres)),
    })
    _write_double_colon(movies, directory / ML1M_FILES["items"])

    logger.info(f"Dataset escrito en formato 1M: {directory}")
    return directory


LOADERS = {"ml100k": load_ml100k, "ml1m": load_ml1m}
WRITERS = {"ml100k": write_ml100k, "ml1m": write_ml1m}


def ratings_file(kind: str, directory) -> Path:
    files: Optional[Dict[str, str]] = {"ml100k": ML100K_FILES, "ml1m": ML1M_FILES}.get(kind)
    if files is None:
        raise DataLoadError(str(directory), reason=f"Tipo de dataset desconocido '{kind}'")
    return Path(directory) / files["ratings"]
