"""
hbgnn.py - Ensamblado del modelo HBGNN / AHBGNN

Pipeline de una predicción:
embeddings de características -> rondas en los grafos de enlaces de usuario
e ítem -> encapsulación -> (β: suma de embeddings de ID) -> rondas en el
grafo de lugar -> [N_u; N_i] -> MLP de 5 capas -> rating sin recortar.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from config import BATCH_SIZE
from src.autodiff import Rng, Tensor, add, concat, reshape, use_precision
from src.bigraph import (
    AttentionProjections, PlaceGraph, assign_embeddings, encapsulate, run_link_rounds, run_place_rounds,
)
from src.model.baseline import build_mlp_baseline, forward_mlp_baseline
from src.model.config import MLP_DEPTH, ModelConfig, variant_label
from src.model.features import (
    DATASET_SPECIFIC_FEATURES, ENTITY_FEATURES, ENTITY_IDS, embed_feature, feature_vocab_size,
)
from src.model.parameters import ParameterSet
from src.nn import EmbeddingTable, GruCell, build_mlp, mlp_forward, mlp_from_parameters
from src.processors.dataset import FeatureBatch, RatingExample
from src.utils.exceptions import ConstructionError, ContractError

logger = logging.getLogger(__name__)

ENTITIES = ("user", "item")
ENCODER_DEPTH = 2


# ============================================
# ESQUEMA POR VARIANTE
# ============================================
def link_features(config: ModelConfig, entity: str) -> Tuple[str, ...]:
    """Nodos del grafo de enlaces de la entidad; β elimina el nodo de ID"""
    features = ENTITY_FEATURES[entity]
    if config.variant == "beta":
        return tuple(f for f in features if f != ENTITY_IDS[entity])
    return features


def uses_attention(config: ModelConfig, entity: str) -> bool:
    """
    Con menos de dos vecinos por nodo el softmax vale 1 constante, así que
    solo los grafos de 3 o más nodos llevan proyecciones de atención.
    """
    return config.attention and len(link_features(config, entity)) >= 3


def dataset_specific_parameters(config: ModelConfig, params) -> List[str]:
    """Nombres de las tablas que se reconstruyen al transferir a otro dataset"""
    suffixes = tuple(f".embed.{feature}" for feature in DATASET_SPECIFIC_FEATURES)
    return [name for name in params if name.endswith(suffixes)]


# ============================================
# CONSTRUCCIÓN
# ============================================
def build(config: ModelConfig, vocabs) -> ParameterSet:
    """
    Crea e inicializa todos los tensores a partir de ``config.seed``.

    α crea las tablas de ID a link_dim como nodos de enlace; β las crea a
    place_dim (``place.embed.*``) para sumarlas en el grafo de lugar. La tabla
    de edad tiene siempre 100 filas.

    Raises:
        ConstructionError: algún vocabulario vacío
    """
    empty = [name for name, size in vocabs.sizes().items() if size < 1]
    if empty:
        raise ConstructionError("ParameterSet", f"vocabularios vacíos: {', '.join(empty)}")

    params = ParameterSet()
    with use_precision(config.dtype):
        rng = Rng(config.seed)

        if config.architecture == "mlp":
            build_mlp_baseline(config, vocabs, rng, params)
            logger.info(f"Modelo {variant_label(config)} construido: {params}")
            return params

        for entity in ENTITIES:
            features = link_features(config, entity)
            for feature in features:
                table = EmbeddingTable.create(f"{entity}.embed.{feature}", feature_vocab_size(feature, vocabs),
                                              config.link_dim, rng)
                params.register_all(table.parameters())
            params.register_all(GruCell.create(f"{entity}.link.gru", config.link_dim, config.link_dim, rng).parameters())
            if uses_attention(config, entity):
                params.register_all(AttentionProjections.create(f"{entity}.link.attention", config.link_dim, rng).parameters())
            encoder = build_mlp(f"{entity}.encoder", len(features) * config.link_dim,
                                (config.encoder_hidden, config.place_dim), rng)
            for layer in encoder:
                params.register_all(layer.parameters())

        if config.variant == "beta":
            for entity in ENTITIES:
                feature = ENTITY_IDS[entity]
                table = EmbeddingTable.create(f"place.embed.{feature}", feature_vocab_size(feature, vocabs),
                                              config.place_dim, rng)
                params.register_all(table.parameters())

        params.register_all(GruCell.create("place.gru", config.place_dim, config.place_dim, rng).parameters())
        for layer in build_mlp("head", 2 * config.place_dim, config.mlp_widths, rng):
            params.register_all(layer.parameters())

    logger.info(f"Modelo {variant_label(config)} construido: {params}")
    return params


# ============================================
# FORWARD
# ============================================
@dataclass
class ForwardTrace:
    """Predicción [B] y estados del grafo de lugar tras el paso de mensajes"""
    prediction: Tensor
    user_state: Tensor
    item_state: Tensor


def _entity_state(params, config: ModelConfig, entity: str, batch: FeatureBatch) -> Tensor:
    features = [(feature, embed_feature(EmbeddingTable.from_parameters(params, f"{entity}.embed.{feature}"),
                                        feature, batch))
                for feature in link_features(config, entity)]
    cell = GruCell.from_parameters(params, f"{entity}.link.gru")
    attention = None
    if uses_attention(config, entity):
        attention = AttentionProjections.from_parameters(params, f"{entity}.link.attention")

    graph = run_link_rounds(assign_embeddings(features, cell, attention), config.rounds_link)
    state = encapsulate(graph, mlp_from_parameters(params, f"{entity}.encoder", ENCODER_DEPTH))

    if config.variant == "beta":
        feature = ENTITY_IDS[entity]
        state = add(state, embed_feature(EmbeddingTable.from_parameters(params, f"place.embed.{feature}"),
                                         feature, batch))
    return state


def forward_trace(params, config: ModelConfig, batch: FeatureBatch) -> ForwardTrace:
    """
    Forward completo del HBGNN conservando los estados N_u y N_i.

    Raises:
        ContractError: si la configuración es la línea base MLP
        VocabularyError: índice fuera de vocabulario
    """
    if config.architecture == "mlp":
        raise ContractError("forward_trace", "la línea base MLP no tiene grafo de lugar")

    place = PlaceGraph(_entity_state(params, config, "user", batch),
                       _entity_state(params, config, "item", batch),
                       GruCell.from_parameters(params, "place.gru"))
    place = run_place_rounds(place, config.rounds_place)

    head = mlp_from_parameters(params, "head", MLP_DEPTH)
    out = mlp_forward(head, concat([place.user_state, place.item_state], axis=-1))
    return ForwardTrace(reshape(out, (len(batch),)), place.user_state, place.item_state)


def forward(params, config: ModelConfig, batch: FeatureBatch) -> Tensor:
    """Predicción [B] sin recortar para cada ejemplo del lote"""
    if config.architecture == "mlp":
        return forward_mlp_baseline(params, config, batch)
    return forward_trace(params, config, batch).prediction


# ============================================
# FACHADA
# ============================================
@dataclass
class RatingModel:
    """Configuración, parámetros y vocabularios de un modelo entrenable"""
    config: ModelConfig
    params: ParameterSet
    vocabs: object

    @property
    def label(self) -> str:
        return variant_label(self.config)

    def predict(self, batch: FeatureBatch) -> Tensor:
        return forward(self.params, self.config, batch)

    def trace(self, batch: FeatureBatch) -> ForwardTrace:
        return forward_trace(self.params, self.config, batch)

    def predict_array(self, batch: FeatureBatch, chunk_size: int = BATCH_SIZE) -> np.ndarray:
        """Predicciones en float64 por bloques de tamaño fijo (orden de reducción estable)"""
        outputs = []
        for start in range(0, len(batch), chunk_size):
            chunk = batch.take(np.arange(start, min(start + chunk_size, len(batch))))
            outputs.append(self.predict(chunk).numpy().astype(np.float64))
        return np.concatenate(outputs) if outputs else np.zeros(0)


def build_model(config: ModelConfig, vocabs) -> RatingModel:
    return RatingModel(config, build(config, vocabs), vocabs)


def predict_example(model: RatingModel, example: RatingExample, clamp: bool = False) -> float:
    """
    Rating predicho para un ejemplo suelto.

    Args:
        clamp: Recorta al rango [1, 5] (solo para servir predicciones)
    """
    batch = FeatureBatch.from_examples([example], model.vocabs)
    value = float(model.predict(batch).numpy()[0])
    return float(np.clip(value, 1.0, 5.0)) if clamp else value
