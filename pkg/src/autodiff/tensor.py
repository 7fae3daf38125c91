"""
tensor.py - Tensor denso y cinta (tape) de diferenciación en modo reverso

Un Tensor envuelve un arreglo de numpy. Las operaciones diferenciables son
subclases de Function: al aplicarse dentro de un bloque ``with Tape()`` quedan
registradas en orden topológico y ``Tape.backward`` recorre ese registro una
sola vez en orden inverso.
"""

import logging
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.utils.exceptions import ContractError, DimensionError

logger = logging.getLogger(__name__)

_state = threading.local()


# ============================================
# PRECISIÓN NUMÉRICA
# ============================================
def get_default_dtype():
    """Retorna el dtype usado al crear tensores nuevos (float32 por defecto)"""
    return getattr(_state, "dtype", np.float32)


@contextmanager
def use_precision(dtype):
    """
    Cambia temporalmente la precisión por defecto del hilo actual.

    Args:
        dtype: np.float32 para entrenamiento, np.float64 para verificación de gradientes
    """
    previous = get_default_dtype()
    _state.dtype = np.dtype(dtype).type
    try:
        yield
    finally:
        _state.dtype = previous


class Tensor:
    """
    Arreglo numérico denso que participa en la diferenciación en modo reverso.

    Attributes:
        data (np.ndarray): Valores en orden row-major
        requires_grad (bool): Si el tensor es una hoja entrenable o depende de una
        name (str): Nombre estable (solo parámetros)
    """

    def __init__(self, data, requires_grad=False, name=None, dtype=None):
        array = np.array(data, dtype=dtype if dtype is not None else get_default_dtype())
        if any(extent <= 0 for extent in array.shape):
            raise DimensionError("Tensor", array.shape, reason="todas las extensiones deben ser positivas")
        self.data = array
        self.requires_grad = bool(requires_grad)
        self.name = name

    @classmethod
    def _from_array(cls, array, requires_grad):
        # Resultado de una operación: el arreglo ya es propio, no se copia
        tensor = cls.__new__(cls)
        tensor.data = array
        tensor.requires_grad = requires_grad
        tensor.name = None
        return tensor

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def size(self) -> int:
        return self.data.size

    @property
    def dtype(self):
        return self.data.dtype

    def numpy(self) -> np.ndarray:
        """Retorna una copia de los datos"""
        return self.data.copy()

    def item(self) -> float:
        return float(self.data.reshape(-1)[0])

    def assign(self, values: np.ndarray):
        """Reemplaza los valores manteniendo forma y dtype (uso exclusivo del optimizador)"""
        values = np.asarray(values, dtype=self.data.dtype)
        if values.shape != self.data.shape:
            raise DimensionError("Tensor.assign", self.data.shape, values.shape)
        self.data = values

    def detach(self) -> "Tensor":
        return Tensor(self.data, requires_grad=False)

    def __repr__(self) -> str:
        label = f" '{self.name}'" if self.name else ""
        return f"<Tensor{label} shape={list(self.shape)} dtype={self.dtype} requires_grad={self.requires_grad}>"


def constant(data, dtype=None) -> Tensor:
    """Crea un tensor sin gradiente (entradas, máscaras, objetivos)"""
    return Tensor(data, requires_grad=False, dtype=dtype)


# ============================================
# OPERACIONES DIFERENCIABLES
# ============================================
class Function:
    """
    Clase base de las operaciones diferenciables.

    Las subclases implementan ``forward`` sobre arreglos de numpy y ``backward``,
    que recibe el gradiente de la salida y retorna un gradiente por entrada
    (o None si la entrada no lo necesita).
    """

    def __init__(self, *inputs: Tensor):
        self.inputs = inputs

    def forward(self, *arrays: np.ndarray, **kwargs) -> np.ndarray:
        raise NotImplementedError("Forward pass not implemented for this function")

    def backward(self, grad: np.ndarray) -> Sequence[Optional[np.ndarray]]:
        raise NotImplementedError("Backward pass not implemented for this function")

    @classmethod
    def apply(cls, *inputs: Tensor, **kwargs) -> Tensor:
        function = cls(*inputs)
        out = function.forward(*(t.data for t in inputs), **kwargs)
        requires_grad = any(t.requires_grad for t in inputs)
        result = Tensor._from_array(out, requires_grad)

        tape = current_tape()
        if requires_grad and tape is not None:
            tape.record(function, result)
        return result


@dataclass
class TapeNode:
    """Una operación ejecutada: función, entradas y salida"""
    function: Function
    output: Tensor

    @property
    def inputs(self) -> Tuple[Tensor, ...]:
        return self.function.inputs


def current_tape() -> Optional["Tape"]:
    """Retorna la cinta activa del hilo actual, o None"""
    stack = getattr(_state, "tapes", None)
    return stack[-1] if stack else None


class Tape:
    """
    Registro ordenado de operaciones para un único forward + backward.

    Una cinta es de un solo escritor: cada hilo usa su propia cinta. Después de
    ``backward`` la cinta queda consumida y un segundo ``backward`` lanza
    ContractError (no hay replay).
    """

    def __init__(self):
        self._nodes: List[TapeNode] = []
        self._produced: set = set()
        self._consumed = False

    def __enter__(self) -> "Tape":
        stack = getattr(_state, "tapes", None)
        if stack is None:
            stack = _state.tapes = []
        stack.append(self)
        return self

    def __exit__(self, exc_type, exc, tb):
        _state.tapes.pop()
        return False

    def __len__(self) -> int:
        return len(self._nodes)

    @property
    def consumed(self) -> bool:
        return self._consumed

    def record(self, function: Function, output: Tensor):
        if self._consumed:
            raise ContractError("Tape.record", "la cinta ya fue consumida por backward")
        self._nodes.append(TapeNode(function, output))
        self._produced.add(id(output))

    def backward(self, root: Tensor, wrt: Mapping[str, Tensor]) -> Dict[str, np.ndarray]:
        """
        Propaga gradientes desde un escalar hacia los tensores solicitados.

        Args:
            root: Tensor escalar producido en esta cinta
            wrt: Mapa nombre -> tensor hoja (típicamente un ParameterSet)

        Returns:
            dict: nombre -> gradiente (ceros para tensores no alcanzables)

        Raises:
            ContractError: raíz no escalar, no producida en la cinta, o cinta consumida
        """
        if self._consumed:
            raise ContractError("Tape.backward", "la cinta ya fue consumida; vuelva a ejecutar el forward")
        if root.size != 1:
            raise ContractError("Tape.backward", f"la raíz debe ser escalar, forma {list(root.shape)}")
        if id(root) not in self._produced:
            raise ContractError("Tape.backward", "la raíz no fue producida en esta cinta")

        grads: Dict[int, np.ndarray] = {id(root): np.ones_like(root.data)}

        # Orden inverso de registro: cada nodo se visita exactamente una vez
        for node in reversed(self._nodes):
            grad = grads.pop(id(node.output), None)
            if grad is None:
                continue
            input_grads = node.function.backward(grad)
            for tensor, input_grad in zip(node.inputs, input_grads):
                if input_grad is None or not tensor.requires_grad:
                    continue
                key = id(tensor)
                if key in grads:
                    grads[key] = grads[key] + input_grad
                else:
                    grads[key] = input_grad

        self._consumed = True
        self._nodes.clear()
        logger.debug(f"Backward completado: {len(grads)} gradientes de hojas")

        result = {}
        for name, tensor in wrt.items():
            grad = grads.get(id(tensor))
            result[name] = np.zeros_like(tensor.data) if grad is None else grad.astype(tensor.dtype, copy=False)
        return result
