"""
dataset.py - Tipos del dataset de ratings: ejemplos, dataset y lotes codificados

El Dataset guarda las tres tablas de la distribución (ratings, usuarios,
películas) como DataFrames de pandas más los vocabularios. Los lotes que
consume el modelo (FeatureBatch) son arreglos de índices de numpy.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config import AGE_SLOTS, CANONICAL_GENRES, UNKNOWN_GENRE
from src.processors.vocabulary import Vocabularies, build_vocabs
from src.utils.exceptions import DataLoadError, DomainError

logger = logging.getLogger(__name__)

PROVENANCES = ("ml100k", "ml1m")

RATING_COLUMNS = ["user_id", "movie_id", "rating", "timestamp"]
USER_COLUMNS = ["user_id", "age", "gender", "occupation", "zip"]
MOVIE_COLUMNS = ["movie_id", "title", "release_date", "video_release_date", "imdb_url", "genres"]

_GENRE_POSITION = {name: position for position, name in enumerate(CANONICAL_GENRES)}


def canonical_genres(names: Iterable[str]) -> Tuple[str, ...]:
    """
    Normaliza un conjunto de géneros al orden canónico, sin duplicados.

    Un conjunto vacío se convierte en el género explícito "unknown".

    Raises:
        KeyError: si algún nombre no es un género canónico
    """
    unique = {name for name in names}
    if not unique:
        return (UNKNOWN_GENRE,)
    return tuple(sorted(unique, key=lambda name: _GENRE_POSITION[name]))


def age_index(age) -> np.ndarray:
    """Índice de la tabla fija de edades: clamp(age, 0, 99)"""
    return np.clip(np.asarray(age, dtype=np.int64), 0, AGE_SLOTS - 1)


# ============================================
# EJEMPLO INDIVIDUAL
# ============================================
@dataclass(frozen=True)
class RatingExample:
    """Un rating con las características crudas del usuario y la película"""
    user_id: int
    age: int
    occupation: str
    zip: str
    gender: str
    movie_id: int
    genres: Tuple[str, ...]
    rating: float
    timestamp: int = 0

    def __post_init__(self):
        try:
            object.__setattr__(self, "genres", canonical_genres(self.genres))
        except KeyError as e:
            raise DomainError("RatingExample", f"género desconocido {e}")


# ============================================
# LOTE CODIFICADO
# ============================================
@dataclass(frozen=True)
class FeatureBatch:
    """
    Índices de vocabulario de B ejemplos.

    ``genres`` es la máscara multi-hot [B×19]; ``age`` ya viene recortada al
    rango de la tabla de edades.
    """
    user_id: np.ndarray
    age: np.ndarray
    occupation: np.ndarray
    zip: np.ndarray
    gender: np.ndarray
    movie_id: np.ndarray
    genres: np.ndarray
    rating: np.ndarray

    def __len__(self) -> int:
        return int(self.rating.shape[0])

    def take(self, positions) -> "FeatureBatch":
        """Sub-lote con las filas indicadas, en ese orden"""
        positions = np.asarray(positions, dtype=np.int64)
        return FeatureBatch(**{name: getattr(self, name)[positions] for name in self.__dataclass_fields__})

    @classmethod
    def from_examples(cls, examples: Sequence[RatingExample], vocabs: Vocabularies) -> "FeatureBatch":
        """
        Codifica ejemplos sueltos (p. ej. el comando ``predict``).

        Raises:
            DomainError: lista vacía
            VocabularyError: token fuera de vocabulario
        """
        if not examples:
            raise DomainError("FeatureBatch.from_examples", "no hay ejemplos que codificar")

        genres = np.zeros((len(examples), vocabs.genre.size))
        for row, example in enumerate(examples):
            for name in example.genres:
                genres[row, vocabs.genre.index(name)] = 1.0

        def column(feature):
            vocab = getattr(vocabs, feature)
            return np.array([vocab.index(getattr(ex, feature)) for ex in examples], dtype=np.int64)

        return cls(
            user_id=column("user_id"),
            age=age_index([ex.age for ex in examples]),
            occupation=column("occupation"),
            zip=column("zip"),
            gender=column("gender"),
            movie_id=column("movie_id"),
            genres=genres,
            rating=np.array([ex.rating for ex in examples], dtype=np.float64),
        )


# ============================================
# DATASET
# ============================================
@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Dataset MovieLens cargado.

    Attributes:
        ratings: user_id, movie_id, rating (real), timestamp; índice posicional 0..n-1
        users: user_id, age, gender, occupation, zip
        movies: movie_id, title, release_date, video_release_date, imdb_url, genres (tupla canónica)
        provenance: "ml100k" o "ml1m"
        vocabs: Vocabularios del dataset completo; se construyen si no se dan
        source_dir: Directorio de origen (necesario para los folds de 100K)
    """
    ratings: pd.DataFrame
    users: pd.DataFrame
    movies: pd.DataFrame
    provenance: str
    vocabs: Optional[Vocabularies] = None
    source_dir: Optional[Path] = field(default=None)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise DataLoadError(str(self.source_dir), reason=f"procedencia desconocida '{self.provenance}'")
        if self.vocabs is None:
            object.__setattr__(self, "vocabs", build_vocabs(self))

    def __len__(self) -> int:
        return len(self.ratings)

    @property
    def num_users(self) -> int:
        return int(self.ratings["user_id"].nunique())

    @property
    def num_movies(self) -> int:
        return int(self.ratings["movie_id"].nunique())

    def counts(self) -> Tuple[int, int, int]:
        """(usuarios, películas, ratings) según las tablas de la distribución"""
        return len(self.users), len(self.movies), len(self.ratings)

    @cached_property
    def joined(self) -> pd.DataFrame:
        """Ratings con las columnas de usuario y película, en el orden de los ratings"""
        frame = self.ratings.merge(self.users, on="user_id", how="left", validate="many_to_one")
        frame = frame.merge(self.movies[["movie_id", "genres"]], on="movie_id", how="left", validate="many_to_one")
        frame.index = self.ratings.index
        return frame

    @cached_property
    def encoded(self) -> FeatureBatch:
        """Todos los ratings codificados con los vocabularios del dataset"""
        vocabs = self.vocabs
        frame = self.joined

        movie_genres = np.zeros((vocabs.movie_id.size, vocabs.genre.size))
        movie_rows = vocabs.movie_id.encode(self.movies["movie_id"])
        for row, genres in zip(movie_rows, self.movies["genres"]):
            for name in genres:
                movie_genres[row, vocabs.genre.index(name)] = 1.0

        movie_index = vocabs.movie_id.encode(frame["movie_id"])
        batch = FeatureBatch(
            user_id=vocabs.user_id.encode(frame["user_id"]),
            age=age_index(frame["age"].to_numpy()),
            occupation=vocabs.occupation.encode(frame["occupation"]),
            zip=vocabs.zip.encode(frame["zip"]),
            gender=vocabs.gender.encode(frame["gender"]),
            movie_id=movie_index,
            genres=movie_genres[movie_index],
            rating=frame["rating"].to_numpy(dtype=np.float64),
        )
        logger.debug(f"Dataset {self.provenance} codificado: {len(batch)} ratings")
        return batch

    def example(self, position: int) -> RatingExample:
        row = self.joined.iloc[position]
        return RatingExample(
            user_id=int(row["user_id"]),
            age=int(row["age"]),
            occupation=str(row["occupation"]),
            zip=str(row["zip"]),
            gender=str(row["gender"]),
            movie_id=int(row["movie_id"]),
            genres=tuple(row["genres"]),
            rating=float(row["rating"]),
            timestamp=int(row["timestamp"]),
        )

    def examples(self) -> List[RatingExample]:
        return [self.example(position) for position in range(len(self))]

    def subset(self, positions) -> "Dataset":
        """Dataset con los ratings indicados; conserva tablas y vocabularios completos"""
        positions = np.asarray(positions, dtype=np.int64)
        ratings = self.ratings.iloc[positions].reset_index(drop=True)
        return Dataset(ratings, self.users, self.movies, self.provenance, self.vocabs, self.source_dir)


def encode(dataset: Dataset, indices=None) -> FeatureBatch:
    """
    Lote codificado de los ratings en ``indices`` (todos si es None).

    Raises:
        VocabularyError: algún token no resuelve en los vocabularios
    """
    batch = dataset.encoded
    if indices is None:
        return batch
    return batch.take(indices)
