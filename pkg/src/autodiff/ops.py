"""
ops.py - Operaciones diferenciables sobre Tensor

Cada operación es una subclase de Function con su regla de backward y una
función de conveniencia en minúsculas. Las operaciones binarias elemento a
elemento exigen formas idénticas; el broadcasting es explícito con ``expand``.
"""

import logging
from typing import Sequence

import numpy as np

from config import LEAKY_SLOPE
from src.autodiff.tensor import Function, Tensor
from src.utils.exceptions import DimensionError, DomainError

logger = logging.getLogger(__name__)


def _require_same_shape(operation, a: Tensor, b: Tensor):
    if a.shape != b.shape:
        raise DimensionError(operation, a.shape, b.shape)


# ============================================
# ÁLGEBRA LINEAL
# ============================================
class MatMul(Function):
    def forward(self, a, b):
        return a @ b

    def backward(self, grad):
        a, b = (t.data for t in self.inputs)
        return grad @ b.T, a.T @ grad


def matmul(a: Tensor, b: Tensor) -> Tensor:
    """
    Producto matricial [m×k]·[k×n] -> [m×n].

    Raises:
        DimensionError: si alguno no es 2-D o las dimensiones internas no coinciden
    """
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise DimensionError("matmul", a.shape, b.shape)
    return MatMul.apply(a, b)


class Transpose(Function):
    def forward(self, a):
        return a.T.copy()

    def backward(self, grad):
        return (grad.T,)


def transpose(a: Tensor) -> Tensor:
    if a.ndim != 2:
        raise DimensionError("transpose", a.shape, reason="se esperaba una matriz")
    return Transpose.apply(a)


class Reshape(Function):
    def forward(self, a, shape):
        return a.reshape(shape)

    def backward(self, grad):
        return (grad.reshape(self.inputs[0].shape),)


def reshape(a: Tensor, shape) -> Tensor:
    shape = tuple(shape)
    if int(np.prod(shape)) != a.size:
        raise DimensionError("reshape", a.shape, shape)
    return Reshape.apply(a, shape=shape)


class Expand(Function):
    def forward(self, a, shape):
        return np.broadcast_to(a, shape).copy()

    def backward(self, grad):
        target = self.inputs[0].shape
        # Suma sobre las dimensiones agregadas por el broadcasting
        while grad.ndim > len(target):
            grad = grad.sum(axis=0)
        for axis, extent in enumerate(target):
            if extent == 1 and grad.shape[axis] != 1:
                grad = grad.sum(axis=axis, keepdims=True)
        return (grad,)


def expand(a: Tensor, shape) -> Tensor:
    """Broadcast explícito de ``a`` a ``shape`` (backward reduce por suma)"""
    shape = tuple(shape)
    try:
        np.broadcast_shapes(a.shape, shape)
    except ValueError:
        raise DimensionError("expand", a.shape, shape)
    if np.broadcast_shapes(a.shape, shape) != shape:
        raise DimensionError("expand", a.shape, shape)
    return Expand.apply(a, shape=shape)


# ============================================
# ELEMENTO A ELEMENTO
# ============================================
class Add(Function):
    def forward(self, a, b):
        return a + b

    def backward(self, grad):
        return grad, grad


class Sub(Function):
    def forward(self, a, b):
        return a - b

    def backward(self, grad):
        return grad, -grad


class Hadamard(Function):
    def forward(self, a, b):
        return a * b

    def backward(self, grad):
        a, b = (t.data for t in self.inputs)
        return grad * b, grad * a


def add(a: Tensor, b: Tensor) -> Tensor:
    _require_same_shape("add", a, b)
    return Add.apply(a, b)


def sub(a: Tensor, b: Tensor) -> Tensor:
    _require_same_shape("sub", a, b)
    return Sub.apply(a, b)


def hadamard(a: Tensor, b: Tensor) -> Tensor:
    _require_same_shape("hadamard", a, b)
    return Hadamard.apply(a, b)


def add_all(tensors: Sequence[Tensor]) -> Tensor:
    """Suma de izquierda a derecha en el orden dado (reducción fija)"""
    if not tensors:
        raise DomainError("add_all", "se requiere al menos un tensor")
    total = tensors[0]
    for tensor in tensors[1:]:
        total = add(total, tensor)
    return total


class Sigmoid(Function):
    def forward(self, x):
        # Forma estable: exp solo de argumentos no positivos
        e = np.exp(-np.abs(x))
        self.out = np.where(x >= 0, 1.0 / (1.0 + e), e / (1.0 + e)).astype(x.dtype, copy=False)
        return self.out

    def backward(self, grad):
        return (grad * self.out * (1.0 - self.out),)


class Tanh(Function):
    def forward(self, x):
        self.out = np.tanh(x)
        return self.out

    def backward(self, grad):
        return (grad * (1.0 - self.out * self.out),)


class LeakyRelu(Function):
    def forward(self, x, slope):
        self.slope = slope
        return np.where(x > 0, x, x * x.dtype.type(slope))

    def backward(self, grad):
        x = self.inputs[0].data
        return (np.where(x > 0, grad, grad * grad.dtype.type(self.slope)),)


def sigmoid(x: Tensor) -> Tensor:
    return Sigmoid.apply(x)


def tanh(x: Tensor) -> Tensor:
    return Tanh.apply(x)


def leaky_relu(x: Tensor, slope: float = LEAKY_SLOPE) -> Tensor:
    return LeakyRelu.apply(x, slope=slope)


_UNARY = {"sigmoid": sigmoid, "tanh": tanh, "leaky_relu": leaky_relu}
_BINARY = {"add": add, "sub": sub, "hadamard": hadamard}


def elementwise(kind: str, *operands: Tensor) -> Tensor:
    """
    Despacha una operación puntual por nombre.

    Args:
        kind: sigmoid | tanh | leaky_relu | add | sub | hadamard
        *operands: uno (unarias) o dos (binarias) tensores
    """
    if kind in _UNARY:
        if len(operands) != 1:
            raise DomainError(f"elementwise({kind})", f"se esperaba 1 operando, se recibieron {len(operands)}")
        return _UNARY[kind](operands[0])
    if kind in _BINARY:
        if len(operands) != 2:
            raise DomainError(f"elementwise({kind})", f"se esperaban 2 operandos, se recibieron {len(operands)}")
        return _BINARY[kind](*operands)
    raise DomainError("elementwise", f"operación desconocida '{kind}'")


# ============================================
# REDUCCIONES Y NORMALIZACIÓN
# ============================================
class Softmax(Function):
    def forward(self, x, axis):
        self.axis = axis
        shifted = x - x.max(axis=axis, keepdims=True)
        exp = np.exp(shifted)
        self.out = exp / exp.sum(axis=axis, keepdims=True)
        return self.out

    def backward(self, grad):
        s = self.out
        inner = (grad * s).sum(axis=self.axis, keepdims=True)
        return (s * (grad - inner),)


def softmax(v: Tensor, axis: int = -1) -> Tensor:
    """
    Softmax con resta del máximo para estabilidad.

    Raises:
        DomainError: entrada vacía o escalar
    """
    if v.ndim == 0 or v.size == 0:
        raise DomainError("softmax", "el vector de entrada está vacío")
    return Softmax.apply(v, axis=axis)


class Sum(Function):
    def forward(self, x, axis, keepdims):
        self.axis = axis
        self.keepdims = keepdims
        return np.asarray(x.sum(axis=axis, keepdims=keepdims))

    def backward(self, grad):
        shape = self.inputs[0].shape
        if self.axis is not None and not self.keepdims:
            grad = np.expand_dims(grad, self.axis)
        return (np.broadcast_to(grad, shape).copy(),)


def reduce_sum(x: Tensor, axis=None, keepdims=False) -> Tensor:
    return Sum.apply(x, axis=axis, keepdims=keepdims)


# ============================================
# ESTRUCTURA
# ============================================
class Concat(Function):
    def forward(self, *arrays, axis):
        self.axis = axis
        self.sizes = [a.shape[axis] for a in arrays]
        return np.concatenate(arrays, axis=axis)

    def backward(self, grad):
        cuts = np.cumsum(self.sizes)[:-1]
        return tuple(np.split(grad, cuts, axis=self.axis))


def concat(tensors: Sequence[Tensor], axis: int = -1) -> Tensor:
    if not tensors:
        raise DomainError("concat", "lista de tensores vacía")
    reference = list(tensors[0].shape)
    for tensor in tensors[1:]:
        other = list(tensor.shape)
        if len(other) != len(reference):
            raise DimensionError("concat", tensors[0].shape, tensor.shape)
        axis_index = axis % len(reference)
        if other[:axis_index] + other[axis_index + 1:] != reference[:axis_index] + reference[axis_index + 1:]:
            raise DimensionError("concat", tensors[0].shape, tensor.shape)
    return Concat.apply(*tensors, axis=axis)


class Take(Function):
    def forward(self, x, index, axis):
        self.index = index
        self.axis = axis
        return np.take(x, [index], axis=axis)

    def backward(self, grad):
        full = np.zeros_like(self.inputs[0].data)
        slicer = [slice(None)] * full.ndim
        slicer[self.axis] = slice(self.index, self.index + 1)
        full[tuple(slicer)] = grad
        return (full,)


def take(x: Tensor, index: int, axis: int = -1) -> Tensor:
    """Selecciona la posición ``index`` de un eje conservando el eje con extensión 1"""
    if not 0 <= index < x.shape[axis]:
        raise DimensionError("take", x.shape, reason=f"índice {index} fuera del eje {axis}")
    return Take.apply(x, index=index, axis=axis)


class GatherRows(Function):
    def forward(self, table, indices):
        self.indices = indices
        return table[indices]

    def backward(self, grad):
        full = np.zeros_like(self.inputs[0].data)
        # np.add.at acumula en el orden de los índices (reproducible)
        np.add.at(full, self.indices, grad)
        return (full,)


def gather_rows(table: Tensor, indices) -> Tensor:
    """Filas ``indices`` de una matriz; backward dispersa solo en esas filas"""
    indices = np.asarray(indices, dtype=np.int64)
    return GatherRows.apply(table, indices=indices)
