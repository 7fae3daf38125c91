"""
features.py - Esquema de características de usuario y película
"""

from src.autodiff import Tensor
from src.nn import EmbeddingTable, embed_lookup, embed_multi_hot
from config import AGE_SLOTS

# Orden declarado: fija el orden de concatenación en la encapsulación
USER_FEATURES = ("user_id", "age", "occupation", "zip", "gender")
ITEM_FEATURES = ("movie_id", "genre")
ENTITY_FEATURES = {"user": USER_FEATURES, "item": ITEM_FEATURES}
ENTITY_IDS = {"user": "user_id", "item": "movie_id"}

# Tablas propias de cada dataset: se reinicializan al transferir
DATASET_SPECIFIC_FEATURES = ("user_id", "movie_id", "zip")


def feature_vocab_size(feature: str, vocabs) -> int:
    """Filas de la tabla de una característica (la edad usa la tabla fija)"""
    if feature == "age":
        return AGE_SLOTS
    return getattr(vocabs, feature).size


def embed_feature(table: EmbeddingTable, feature: str, batch) -> Tensor:
    """Embedding [B×d] de una característica del lote; los géneros suman sus filas"""
    if feature == "genre":
        return embed_multi_hot(table, batch.genres)
    return embed_lookup(table, getattr(batch, feature))
