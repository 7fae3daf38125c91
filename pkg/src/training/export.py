"""
export.py - Exportación de perfiles de usuario (estado N_u del grafo de lugar)

Una fila por ejemplo: identificadores, rating observado, rating predicho y
las place_dim componentes de N_u tras el paso de mensajes. Es la entrada de
una visualización de perfiles (p. ej. TSNE), que queda fuera de este proyecto.
"""

import io
import logging
from pathlib import Path
from typing import Iterable, Optional

import numpy as np
import pandas as pd

from config import BATCH_SIZE
from src.autodiff import use_precision
from src.model import RatingModel
from src.processors import Dataset, encode
from src.utils.atomic_write import write_atomically
from src.utils.exceptions import DataLoadError, DomainError

logger = logging.getLogger(__name__)

IDENTIFYING_COLUMNS = ["user_id", "movie_id", "rating", "predicted_rating"]


def select_examples(dataset: Dataset, positions=None, movie_ids: Optional[Iterable[int]] = None) -> np.ndarray:
    """Posiciones a exportar: todas o las dadas, opcionalmente solo de ciertas películas"""
    selected = np.arange(len(dataset)) if positions is None else np.asarray(positions, dtype=np.int64)
    if movie_ids is not None:
        wanted = set(int(movie) for movie in movie_ids)
        movies = dataset.ratings["movie_id"].to_numpy()[selected]
        selected = selected[np.isin(movies, list(wanted))]
    return selected


def embeddings_frame(model: RatingModel, dataset: Dataset, positions) -> pd.DataFrame:
    positions = np.asarray(positions, dtype=np.int64)
    if positions.size == 0:
        raise DomainError("export_embeddings", "no hay ejemplos que exportar")

    batch = encode(dataset, positions)
    states, predictions = [], []
    with use_precision(model.config.dtype):
        for start in range(0, len(batch), BATCH_SIZE):
            chunk = batch.take(np.arange(start, min(start + BATCH_SIZE, len(batch))))
            trace = model.trace(chunk)
            states.append(trace.user_state.numpy())
            predictions.append(trace.prediction.numpy())

    ratings = dataset.ratings.iloc[positions]
    frame = pd.DataFrame({
        "user_id": ratings["user_id"].to_numpy(),
        "movie_id": ratings["movie_id"].to_numpy(),
        "rating": ratings["rating"].to_numpy(),
        "predicted_rating": np.concatenate(predictions),
    })
    state_matrix = np.concatenate(states)
    state_columns = pd.DataFrame(state_matrix, columns=[f"n_u_{k}" for k in range(state_matrix.shape[1])])
    return pd.concat([frame, state_columns], axis=1)


def export_embeddings(model: RatingModel, dataset: Dataset, positions, path) -> Path:
    """
    Escribe el archivo tabulado con encabezado (una fila por ejemplo).

    Raises:
        DomainError: sin ejemplos
        DataLoadError: fallo de E/S al escribir
    """
    frame = embeddings_frame(model, dataset, positions)
    buffer = io.StringIO()
    frame.to_csv(buffer, sep="\t", index=False, float_format="%.9g")
    try:
        path = write_atomically(path, buffer.getvalue())
    except OSError as e:
        raise DataLoadError(str(path), reason="no se pudo escribir la exportación", original_error=e)
    logger.info(f"✓ Perfiles exportados: {len(frame)} filas, {frame.shape[1]} columnas -> {path}")
    return path
