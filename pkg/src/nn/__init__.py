"""
nn - Capas entrenables: afín, GRU, embeddings y MLP
"""

from src.nn.layers import (
    Affine, EmbeddingTable, GruCell, affine_forward, build_mlp, embed_lookup, embed_multi_hot,
    gru_step, linear_forward, mlp_forward, mlp_from_parameters,
)

__all__ = [
    'Affine', 'EmbeddingTable', 'GruCell', 'affine_forward', 'build_mlp', 'embed_lookup',
    'embed_multi_hot', 'gru_step', 'linear_forward', 'mlp_forward', 'mlp_from_parameters',
]
