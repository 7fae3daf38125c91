"""
random.py - Generador pseudoaleatorio portable e inicialización Kaiming

Rng envuelve el generador PCG64 de numpy (algoritmo documentado y estable
entre plataformas): la misma semilla produce la misma secuencia.
"""

import numpy as np

from src.autodiff.tensor import Tensor, get_default_dtype
from src.utils.exceptions import DomainError


class Rng:
    """Generador con semilla de 64 bits"""

    def __init__(self, seed: int):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self._generator = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self, low: float, high: float, shape) -> np.ndarray:
        # Siempre en float64; la conversión a la precisión de trabajo es posterior
        return self._generator.uniform(low, high, size=tuple(shape))

    def permutation(self, values) -> np.ndarray:
        return self._generator.permutation(values)

    def choice(self, n: int, size: int) -> np.ndarray:
        """Muestra ``size`` posiciones distintas de range(n)"""
        return self._generator.choice(n, size=size, replace=False)

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed})"


def kaiming_bound(fan_in: int) -> float:
    """Cota b = sqrt(6 / fan_in) (ganancia √2, familia ReLU)"""
    if fan_in < 1:
        raise DomainError("kaiming_uniform", f"fan_in debe ser >= 1, se recibió {fan_in}")
    return float(np.sqrt(6.0 / fan_in))


def kaiming_uniform(fan_in: int, shape, rng: Rng, name=None, dtype=None) -> Tensor:
    """
    Tensor entrenable con muestras U(-b, b), b = sqrt(6 / fan_in).

    Args:
        fan_in: Número de entradas de la capa
        shape: Forma del tensor
        rng: Generador con semilla
        name: Nombre estable del parámetro
        dtype: Precisión (por defecto la del hilo)

    Raises:
        DomainError: si fan_in < 1
    """
    bound = kaiming_bound(fan_in)
    samples = rng.uniform(-bound, bound, shape)
    return Tensor(samples, requires_grad=True, name=name, dtype=dtype if dtype is not None else get_default_dtype())


def zeros(shape, name=None, dtype=None, requires_grad=True) -> Tensor:
    """Tensor de ceros (sesgos)"""
    return Tensor(np.zeros(tuple(shape)), requires_grad=requires_grad, name=name, dtype=dtype if dtype is not None else get_default_dtype())
