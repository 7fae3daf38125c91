"""
splits.py - Particiones de entrenamiento y prueba

- fold_split: los 5 folds predefinidos de la distribución 100K (u{k}.base / u{k}.test)
- temporal_split: 80-20 por timestamp, los ratings más recientes quedan como prueba
- subsample: subconjunto aleatorio reproducible conservando vocabularios
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from config import ML100K_ENCODING, ML100K_FOLD_TEMPLATE, TEMPORAL_TRAIN_FRACTION
from src.autodiff import Rng
from src.processors.dataset import RATING_COLUMNS, Dataset
from src.utils.exceptions import DataLoadError, DomainError

logger = logging.getLogger(__name__)

_KEY = ["user_id", "movie_id", "timestamp"]


@dataclass(frozen=True)
class Split:
    """Posiciones de entrenamiento y prueba sobre los ratings de un Dataset"""
    train: np.ndarray
    test: np.ndarray
    label: str = ""

    def __post_init__(self):
        if np.intersect1d(self.train, self.test).size:
            raise DomainError("Split", "las particiones de entrenamiento y prueba se solapan")

    @property
    def sizes(self):
        return len(self.train), len(self.test)


def _read_fold_file(path: Path) -> pd.DataFrame:
    if not path.exists():
        raise DataLoadError(str(path), reason="Archivo de fold no encontrado en la distribución")
    try:
        frame = pd.read_csv(path, sep="\t", header=None, names=RATING_COLUMNS, encoding=ML100K_ENCODING)
    except pd.errors.ParserError as e:
        raise DataLoadError(str(path), reason="Archivo de fold mal formado", original_error=e)
    return frame[_KEY].astype(np.int64)


def fold_split(dataset: Dataset, fold: int) -> Split:
    """
    Partición estándar k de 100K tomada tal cual de los archivos de la distribución.

    Cada rating se asigna por la clave (usuario, película, timestamp).

    Raises:
        DomainError: fold fuera de 1..5 o dataset que no es 100K
        DataLoadError: archivos de fold ausentes, o ratings que no aparecen en ninguno
    """
    if fold not in range(1, 6):
        raise DomainError("fold_split", f"el fold debe estar en 1..5, se recibió {fold}")
    if dataset.provenance != "ml100k" or dataset.source_dir is None:
        raise DomainError("fold_split", "los folds estándar solo existen para MovieLens 100K")

    base_name, test_name = (name.format(fold=fold) for name in ML100K_FOLD_TEMPLATE)
    base = _read_fold_file(Path(dataset.source_dir) / base_name).assign(_part="train")
    test = _read_fold_file(Path(dataset.source_dir) / test_name).assign(_part="test")
    membership = pd.concat([base, test]).drop_duplicates(_KEY)

    keyed = dataset.ratings[_KEY].reset_index().merge(membership, on=_KEY, how="left")
    unassigned = keyed["_part"].isna()
    if unassigned.any():
        raise DataLoadError(str(dataset.source_dir), reason=f"{int(unassigned.sum())} ratings no aparecen "
                            f"en {base_name} ni en {test_name}")

    train = np.sort(keyed.loc[keyed["_part"] == "train", "index"].to_numpy(dtype=np.int64))
    held_out = np.sort(keyed.loc[keyed["_part"] == "test", "index"].to_numpy(dtype=np.int64))
    logger.info(f"Fold {fold}: {len(train)} entrenamiento / {len(held_out)} prueba")
    return Split(train, held_out, label=f"fold {fold}")


def temporal_split(dataset: Dataset, train_fraction: float = TEMPORAL_TRAIN_FRACTION) -> Split:
    """
    Ordena por timestamp (desempate por usuario y película) y retiene el
    último (1 - train_fraction) como prueba.

    Returns:
        Split de tamaños (⌊f·n⌋, n - ⌊f·n⌋)
    """
    if not 0.0 < train_fraction < 1.0:
        raise DomainError("temporal_split", f"train_fraction debe estar en (0, 1), se recibió {train_fraction}")
    ratings = dataset.ratings
    order = np.lexsort((ratings["movie_id"].to_numpy(), ratings["user_id"].to_numpy(),
                        ratings["timestamp"].to_numpy()))
    cut = int(np.floor(train_fraction * len(order)))
    logger.info(f"Partición temporal {train_fraction:.0%}: {cut} entrenamiento / {len(order) - cut} prueba")
    return Split(order[:cut].astype(np.int64), order[cut:].astype(np.int64), label="temporal")


def subsample(dataset: Dataset, n: int, seed: int) -> Dataset:
    """
    n ratings elegidos al azar (sin reemplazo) en su orden original.

    Conserva las tablas y vocabularios completos del dataset.
    """
    if not 1 <= n <= len(dataset):
        raise DomainError("subsample", f"n debe estar en 1..{len(dataset)}, se recibió {n}")
    positions = np.sort(Rng(seed).choice(len(dataset), n))
    logger.info(f"Submuestra de {n} ratings (semilla {seed})")
    return dataset.subset(positions)
