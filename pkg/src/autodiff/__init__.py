"""
autodiff - Motor de tensores densos con diferenciación en modo reverso
"""

from src.autodiff.tensor import Tensor, Tape, Function, constant, current_tape, get_default_dtype, use_precision
from src.autodiff.ops import (
    add, add_all, concat, elementwise, expand, gather_rows, hadamard, leaky_relu, matmul,
    reduce_sum, reshape, sigmoid, softmax, sub, take, tanh, transpose,
)
from src.autodiff.random import Rng, kaiming_bound, kaiming_uniform, zeros

__all__ = [
    'Tensor', 'Tape', 'Function', 'constant', 'current_tape', 'get_default_dtype', 'use_precision',
    'add', 'add_all', 'concat', 'elementwise', 'expand', 'gather_rows', 'hadamard', 'leaky_relu',
    'matmul', 'reduce_sum', 'reshape', 'sigmoid', 'softmax', 'sub', 'take', 'tanh', 'transpose',
    'Rng', 'kaiming_bound', 'kaiming_uniform', 'zeros',
]
