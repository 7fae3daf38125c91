"""
baseline.py - Línea base MLP sin grafos

Concatena embeddings propios de las siete características y los pasa por una
pila de 5 capas con los mismos anchos que la cabeza de rating del HBGNN.
"""

from src.autodiff import Rng, Tensor, concat, reshape
from src.nn import EmbeddingTable, build_mlp, mlp_forward, mlp_from_parameters
from src.model.features import ITEM_FEATURES, USER_FEATURES, embed_feature, feature_vocab_size

BASELINE_FEATURES = USER_FEATURES + ITEM_FEATURES


def build_mlp_baseline(config, vocabs, rng: Rng, params):
    """Registra en ``params`` las tablas ``baseline.embed.*`` y las capas ``baseline.mlp.*``"""
    for feature in BASELINE_FEATURES:
        table = EmbeddingTable.create(f"baseline.embed.{feature}", feature_vocab_size(feature, vocabs),
                                      config.link_dim, rng)
        params.register_all(table.parameters())
    width = len(BASELINE_FEATURES) * config.link_dim
    for layer in build_mlp("baseline.mlp", width, config.mlp_widths, rng):
        params.register_all(layer.parameters())


def forward_mlp_baseline(params, config, batch) -> Tensor:
    """
    Predicción [B] de la línea base: embeddings concatenados -> MLP de 5 capas.

    Raises:
        VocabularyError: índice fuera de vocabulario
    """
    embedded = [embed_feature(EmbeddingTable.from_parameters(params, f"baseline.embed.{feature}"), feature, batch)
                for feature in BASELINE_FEATURES]
    layers = mlp_from_parameters(params, "baseline.mlp", len(config.mlp_widths))
    out = mlp_forward(layers, concat(embedded, axis=-1))
    return reshape(out, (len(batch),))
