"""
vocabulary.py - Vocabularios de características categóricas

Cada vocabulario asigna índices densos [0, size) a tokens ordenados
lexicográficamente. Se construyen sobre el dataset completo (train + test)
para que la evaluación nunca encuentre tokens fuera de vocabulario.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Tuple

import numpy as np
import pandas as pd

from config import CANONICAL_GENRES
from src.utils.exceptions import ConstructionError, VocabularyError

logger = logging.getLogger(__name__)

# Características categóricas con vocabulario propio (la edad usa la tabla fija de 100)
VOCABULARY_FEATURES = ("user_id", "occupation", "zip", "gender", "genre", "movie_id")


@dataclass(frozen=True)
class Vocabulary:
    """Mapa token -> índice con orden lexicográfico fijo"""
    feature: str
    tokens: Tuple[str, ...]
    _index: Dict[str, int] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.tokens:
            raise ConstructionError(f"vocabulario '{self.feature}'", "no contiene tokens")
        if list(self.tokens) != sorted(set(self.tokens)):
            raise ConstructionError(f"vocabulario '{self.feature}'", "los tokens deben ser únicos y estar ordenados")
        object.__setattr__(self, "_index", {token: position for position, token in enumerate(self.tokens)})

    @classmethod
    def from_values(cls, feature: str, values: Iterable) -> "Vocabulary":
        return cls(feature, tuple(sorted({str(v) for v in values})))

    @property
    def size(self) -> int:
        return len(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token) -> bool:
        return str(token) in self._index

    def index(self, token) -> int:
        """
        Raises:
            VocabularyError: token desconocido
        """
        try:
            return self._index[str(token)]
        except KeyError:
            raise VocabularyError(self.feature, token, self.size)

    def encode(self, values: pd.Series) -> np.ndarray:
        """Codifica una serie completa; cualquier token desconocido es un error"""
        codes = pd.Categorical(values.astype(str), categories=list(self.tokens)).codes
        missing = codes < 0
        if missing.any():
            raise VocabularyError(self.feature, values.astype(str)[missing].iloc[0], self.size)
        return codes.astype(np.int64)


@dataclass(frozen=True)
class Vocabularies:
    """Un vocabulario por característica categórica"""
    user_id: Vocabulary
    occupation: Vocabulary
    zip: Vocabulary
    gender: Vocabulary
    genre: Vocabulary
    movie_id: Vocabulary

    def as_dict(self) -> Dict[str, Vocabulary]:
        return {name: getattr(self, name) for name in VOCABULARY_FEATURES}

    def to_token_lists(self) -> Dict[str, list]:
        return {name: list(vocab.tokens) for name, vocab in self.as_dict().items()}

    @classmethod
    def from_token_lists(cls, lists: Dict[str, list]) -> "Vocabularies":
        missing = [name for name in VOCABULARY_FEATURES if name not in lists]
        if missing:
            raise ConstructionError("Vocabularies", f"faltan vocabularios: {', '.join(missing)}")
        return cls(**{name: Vocabulary(name, tuple(lists[name])) for name in VOCABULARY_FEATURES})

    def sizes(self) -> Dict[str, int]:
        return {name: vocab.size for name, vocab in self.as_dict().items()}


def build_vocabs(dataset) -> Vocabularies:
    """
    Construye los vocabularios a partir de las tablas completas de usuarios y películas
    del dataset (no solo de los ratings observados).

    El vocabulario de género es siempre la lista canónica de 19 géneros, de modo
    que 100K y 1M comparten índices (requisito de la transferencia).

    Args:
        dataset: Objeto con las tablas ``users`` y ``movies``
    """
    users, movies = dataset.users, dataset.movies
    vocabs = Vocabularies(
        user_id=Vocabulary.from_values("user_id", users["user_id"]),
        occupation=Vocabulary.from_values("occupation", users["occupation"]),
        zip=Vocabulary.from_values("zip", users["zip"]),
        gender=Vocabulary.from_values("gender", users["gender"]),
        genre=Vocabulary.from_values("genre", CANONICAL_GENRES),
        movie_id=Vocabulary.from_values("movie_id", movies["movie_id"]),
    )
    logger.info(f"Vocabularios construidos: {vocabs.sizes()}")
    return vocabs
