"""
model - Modelo de rating HBGNN/AHBGNN (variantes α y β) y línea base MLP
"""

from src.model.config import ModelConfig, variant_label
from src.model.parameters import ParameterSet
from src.model.baseline import forward_mlp_baseline
from src.model.hbgnn import (
    ForwardTrace, RatingModel, build, build_model, dataset_specific_parameters, forward, forward_trace,
    link_features, predict_example, uses_attention,
)

__all__ = [
    'ModelConfig', 'variant_label', 'ParameterSet', 'forward_mlp_baseline',
    'ForwardTrace', 'RatingModel', 'build', 'build_model', 'dataset_specific_parameters',
    'forward', 'forward_trace', 'link_features', 'predict_example', 'uses_attention',
]
