"""
loss.py - Raíz del error cuadrático medio como función diferenciable
"""

import numpy as np

from src.autodiff import Function, Tensor
from src.utils.exceptions import DimensionError, DomainError


class Rmse(Function):
    """sqrt(mean((y - ŷ)²)); gradiente definido como 0 cuando la pérdida es exactamente 0"""

    def forward(self, predictions, targets):
        self.diff = predictions - targets
        self.value = np.sqrt(np.mean(self.diff * self.diff, dtype=predictions.dtype))
        return np.asarray(self.value, dtype=predictions.dtype).reshape(())

    def backward(self, grad):
        if self.value == 0:
            return np.zeros_like(self.diff), None
        scale = grad / (self.diff.size * self.value)
        return (scale * self.diff).astype(self.diff.dtype), -(scale * self.diff).astype(self.diff.dtype)


def rmse(predictions: Tensor, targets: Tensor) -> Tensor:
    """
    Raises:
        DomainError: n = 0
        DimensionError: longitudes distintas
    """
    if predictions.shape != targets.shape:
        raise DimensionError("rmse", predictions.shape, targets.shape)
    if predictions.size == 0:
        raise DomainError("rmse", "se requiere al menos una predicción")
    return Rmse.apply(predictions, targets)


def rmse_value(predictions: np.ndarray, targets: np.ndarray) -> float:
    """RMSE en float64 sobre arreglos (evaluación)"""
    predictions = np.asarray(predictions, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    if predictions.shape != targets.shape:
        raise DimensionError("rmse", predictions.shape, targets.shape)
    if predictions.size == 0:
        raise DomainError("rmse", "se requiere al menos una predicción")
    diff = predictions - targets
    return float(np.sqrt(np.mean(diff * diff)))
