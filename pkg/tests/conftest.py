"""
Fixtures compartidos: distribuciones MovieLens sintéticas en tmp_path,
configuraciones reducidas y diferencias finitas en float64.
"""

import logging

import numpy as np
import pytest

from config import CANONICAL_GENRES
from src.model import ModelConfig
from src.processors import load_dataset

# ============================================
# MOVIELENS 100K SINTÉTICO
# ============================================
ML100K_USERS = [
    (1, 24, "M", "technician", "85711"),
    (2, 53, "F", "other", "94043"),
    (3, 23, "M", "writer", "32067"),
    (4, 24, "M", "technician", "43537"),
    (5, 33, "F", "other", "15213"),
    (6, 42, "M", "writer", "98101"),
]
ML100K_MOVIES = [
    (1, "Toy Story (1995)", ("Animation", "Children's", "Comedy")),
    (2, "GoldenEye (1995)", ("Action", "Adventure", "Thriller")),
    (3, "Four Rooms (1995)", ("Thriller",)),
    (4, "Get Shorty (1995)", ("Action", "Comedy", "Drama")),
    (5, "Unknown Title", ("unknown",)),
]


def ml100k_ratings():
    """20 ratings: todos los pares (usuario, película) con (u + m) no múltiplo de 3"""
    rows = []
    for user in range(1, 7):
        for movie in range(1, 6):
            if (user + movie) % 3 == 0:
                continue
            rows.append((user, movie, 1 + (user * movie) % 5, 881250949 + 100 * user + movie))
    return rows


def write_ml100k_files(directory, ratings=None):
    ratings = ml100k_ratings() if ratings is None else ratings
    directory.mkdir(parents=True, exist_ok=True)

    (directory / "u.data").write_text(
        "".join(f"{u}\t{m}\t{r}\t{t}\n" for u, m, r, t in ratings), encoding="latin-1")
    (directory / "u.user").write_text(
        "".join(f"{u}|{age}|{gender}|{occupation}|{zip_code}\n"
                for u, age, gender, occupation, zip_code in ML100K_USERS), encoding="latin-1")

    lines = []
    for movie_id, title, genres in ML100K_MOVIES:
        flags = "|".join("1" if name in genres else "0" for name in CANONICAL_GENRES)
        lines.append(f"{movie_id}|{title}|01-Jan-1995||http://us.imdb.com/M/title-exact?{movie_id}|{flags}\n")
    (directory / "u.item").write_text("".join(lines), encoding="latin-1")

    # Folds estándar: el rating i va a la prueba del fold (i mod 5) + 1
    for fold in range(1, 6):
        test = [row for i, row in enumerate(ratings) if i % 5 + 1 == fold]
        base = [row for i, row in enumerate(ratings) if i % 5 + 1 != fold]
        for name, rows in ((f"u{fold}.base", base), (f"u{fold}.test", test)):
            (directory / name).write_text("".join(f"{u}\t{m}\t{r}\t{t}\n" for u, m, r, t in rows),
                                          encoding="latin-1")
    return directory


# ============================================
# MOVIELENS 1M SINTÉTICO
# ============================================
ML1M_USERS = [
    (1, "F", 1, 10, "48067"),
    (2, "M", 56, 16, "70072"),
    (3, "M", 25, 15, "55117"),
    (4, "M", 45, 10, "02460"),
    (5, "M", 25, 16, "55455"),
]
ML1M_MOVIES = [
    (1, "Toy Story (1995)", "Animation|Children's|Comedy"),
    (2, "Jumanji (1995)", "Adventure|Children's|Fantasy"),
    (3, "Heat (1995)", "Action|Crime|Thriller"),
    (4, "Sabrina (1995)", "Comedy|Romance"),
]


def ml1m_ratings():
    rows = []
    for user in range(1, 6):
        for movie in range(1, 5):
            if (user + 2 * movie) % 3 == 0:
                continue
            rows.append((user, movie, 1 + (user + movie) % 5, 978300760 + 10 * user + movie))
    return rows


def write_ml1m_files(directory, ratings=None):
    ratings = ml1m_ratings() if ratings is None else ratings
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "ratings.dat").write_text(
        "".join(f"{u}::{m}::{r}::{t}\n" for u, m, r, t in ratings), encoding="latin-1")
    (directory / "users.dat").write_text(
        "".join(f"{u}::{g}::{a}::{o}::{z}\n" for u, g, a, o, z in ML1M_USERS), encoding="latin-1")
    (directory / "movies.dat").write_text(
        "".join(f"{m}::{title}::{genres}\n" for m, title, genres in ML1M_MOVIES), encoding="latin-1")
    return directory


# ============================================
# FIXTURES
# ============================================
@pytest.fixture(autouse=True)
def _quiet_logging():
    root = logging.getLogger()
    handlers = list(root.handlers)
    root.setLevel(logging.WARNING)
    yield
    # El CLI reconfigura el logger raíz; se restauran los handlers de pytest
    for handler in list(root.handlers):
        if handler not in handlers:
            root.removeHandler(handler)
            handler.close()
    for handler in handlers:
        if handler not in root.handlers:
            root.addHandler(handler)
    root.setLevel(logging.WARNING)


@pytest.fixture
def ml100k_dir(tmp_path):
    return write_ml100k_files(tmp_path / "ml-100k")


@pytest.fixture
def ml1m_dir(tmp_path):
    return write_ml1m_files(tmp_path / "ml-1m")


@pytest.fixture
def ml100k(ml100k_dir):
    return load_dataset("ml100k", ml100k_dir, force_reload=True)


@pytest.fixture
def ml1m(ml1m_dir):
    return load_dataset("ml1m", ml1m_dir, force_reload=True)


@pytest.fixture
def tiny_config():
    """Dimensiones mínimas para pruebas rápidas (float32)"""
    return ModelConfig.preset("gradcheck", seed=7)


@pytest.fixture
def finite_difference():
    """
    Gradiente numérico por diferencias centrales (paso 1e-4) de ``loss()``
    respecto a las posiciones ``indices`` del arreglo ``array`` (modificado en su lugar).
    """
    def compute(loss, array, indices, step=1e-4):
        flat = array.reshape(-1)
        result = []
        for index in indices:
            original = flat[index]
            flat[index] = original + step
            plus = loss()
            flat[index] = original - step
            minus = loss()
            flat[index] = original
            result.append((plus - minus) / (2 * step))
        return np.array(result)

    return compute
