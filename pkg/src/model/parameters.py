"""
parameters.py - Registro ordenado de parámetros con nombre estable
"""

from typing import Dict, Iterator, Mapping, Tuple

import numpy as np

from src.autodiff import Tensor
from src.utils.exceptions import ConstructionError


class ParameterSet(Mapping[str, Tensor]):
    """
    Mapa ordenado nombre -> Tensor entrenable.

    El orden de iteración es el orden de registro, que a su vez fija el
    consumo del generador aleatorio en ``build`` y el orden de los bloques
    del checkpoint.
    """

    def __init__(self, tensors: Mapping[str, Tensor] = None):
        self._tensors: Dict[str, Tensor] = {}
        for name, tensor in (tensors or {}).items():
            self.register(tensor, name)

    def register(self, tensor: Tensor, name: str = None) -> Tensor:
        """
        Raises:
            ConstructionError: nombre vacío o repetido
        """
        name = name or tensor.name
        if not name:
            raise ConstructionError("ParameterSet", "todo parámetro necesita un nombre")
        if name in self._tensors:
            raise ConstructionError("ParameterSet", f"nombre de parámetro duplicado '{name}'")
        tensor.name = name
        tensor.requires_grad = True
        self._tensors[name] = tensor
        return tensor

    def register_all(self, tensors: Mapping[str, Tensor]):
        for name, tensor in tensors.items():
            self.register(tensor, name)

    def __getitem__(self, name: str) -> Tensor:
        return self._tensors[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._tensors)

    def __len__(self) -> int:
        return len(self._tensors)

    def shapes(self) -> Dict[str, Tuple[int, ...]]:
        return {name: tensor.shape for name, tensor in self._tensors.items()}

    def num_elements(self) -> int:
        return int(sum(tensor.size for tensor in self._tensors.values()))

    def copy(self) -> "ParameterSet":
        """Copia profunda con los mismos nombres y valores"""
        return ParameterSet({name: Tensor(tensor.data, requires_grad=True, name=name, dtype=tensor.dtype)
                             for name, tensor in self._tensors.items()})

    def arrays(self) -> Dict[str, np.ndarray]:
        return {name: tensor.numpy() for name, tensor in self._tensors.items()}

    def __repr__(self) -> str:
        return f"ParameterSet({len(self)} tensores, {self.num_elements()} elementos)"
