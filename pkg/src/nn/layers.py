"""
layers.py - Capas entrenables sobre el motor autodiff

Capa afín, celda GRU, tablas de embeddings y pila MLP. Las capas son vistas
sobre tensores con nombre estable: se crean con ``create`` (inicialización
Kaiming, sesgos en cero) o se reconstruyen desde un ParameterSet con
``from_parameters``.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence

import numpy as np

from src.autodiff import (
    Rng, Tensor, add, constant, expand, gather_rows, hadamard, kaiming_uniform, leaky_relu,
    matmul, reshape, sigmoid, sub, tanh, transpose, zeros,
)
from src.utils.exceptions import DimensionError, DomainError, VocabularyError

logger = logging.getLogger(__name__)


# ============================================
# CAPA AFÍN
# ============================================
@dataclass
class Affine:
    """Capa afín: weight [out×in], bias [out]"""
    weight: Tensor
    bias: Tensor

    @property
    def in_dim(self) -> int:
        return self.weight.shape[1]

    @property
    def out_dim(self) -> int:
        return self.weight.shape[0]

    @classmethod
    def create(cls, prefix: str, in_dim: int, out_dim: int, rng: Rng) -> "Affine":
        weight = kaiming_uniform(in_dim, (out_dim, in_dim), rng, name=f"{prefix}.weight")
        bias = zeros((out_dim,), name=f"{prefix}.bias")
        return cls(weight, bias)

    @classmethod
    def from_parameters(cls, params: Mapping[str, Tensor], prefix: str) -> "Affine":
        return cls(params[f"{prefix}.weight"], params[f"{prefix}.bias"])

    def parameters(self) -> Dict[str, Tensor]:
        return {self.weight.name: self.weight, self.bias.name: self.bias}


def _as_rows(x: Tensor, width: int, operation: str):
    """Promueve un vector [n] a matriz [1×n]; retorna (matriz, era_vector)"""
    if x.ndim == 1:
        if x.shape[0] != width:
            raise DimensionError(operation, x.shape, (width,))
        return reshape(x, (1, width)), True
    if x.ndim != 2 or x.shape[1] != width:
        raise DimensionError(operation, x.shape, ("B", width))
    return x, False


def affine_forward(layer: Affine, x: Tensor) -> Tensor:
    """
    weight·x + bias para un vector [in] o un lote de filas [B×in].

    Raises:
        DimensionError: si el ancho de x no coincide con la capa
    """
    rows, was_vector = _as_rows(x, layer.in_dim, "affine_forward")
    out = matmul(rows, transpose(layer.weight))
    out = add(out, expand(layer.bias, out.shape))
    if was_vector:
        return reshape(out, (layer.out_dim,))
    return out


# ============================================
# CELDA GRU
# ============================================
_GRU_MATRICES = ("W_z", "W_r", "W_h", "U_z", "U_r", "U_h")
_GRU_BIASES = ("b_z", "b_r", "b_h")


@dataclass
class GruCell:
    """
    Celda GRU con compuertas de actualización (z) y reinicio (r).

    Convención: h' = (1 - z) ⊙ h + z ⊙ h̃
    """
    W_z: Tensor
    W_r: Tensor
    W_h: Tensor
    U_z: Tensor
    U_r: Tensor
    U_h: Tensor
    b_z: Tensor
    b_r: Tensor
    b_h: Tensor

    @property
    def input_dim(self) -> int:
        return self.W_z.shape[1]

    @property
    def hidden_dim(self) -> int:
        return self.W_z.shape[0]

    @classmethod
    def create(cls, prefix: str, input_dim: int, hidden_dim: int, rng: Rng) -> "GruCell":
        tensors = {}
        for name in _GRU_MATRICES:
            fan_in = input_dim if name.startswith("W") else hidden_dim
            tensors[name] = kaiming_uniform(fan_in, (hidden_dim, fan_in), rng, name=f"{prefix}.{name}")
        for name in _GRU_BIASES:
            tensors[name] = zeros((hidden_dim,), name=f"{prefix}.{name}")
        return cls(**tensors)

    @classmethod
    def from_parameters(cls, params: Mapping[str, Tensor], prefix: str) -> "GruCell":
        return cls(**{name: params[f"{prefix}.{name}"] for name in _GRU_MATRICES + _GRU_BIASES})

    def parameters(self) -> Dict[str, Tensor]:
        tensors = [getattr(self, name) for name in _GRU_MATRICES + _GRU_BIASES]
        return {t.name: t for t in tensors}


def _linear(x: Tensor, weight: Tensor) -> Tensor:
    return matmul(x, transpose(weight))


def linear_forward(weight: Tensor, x: Tensor) -> Tensor:
    """weight·x sin sesgo, para un vector [in] o un lote [B×in]"""
    rows, was_vector = _as_rows(x, weight.shape[1], "linear_forward")
    out = _linear(rows, weight)
    if was_vector:
        return reshape(out, (weight.shape[0],))
    return out


def gru_step(cell: GruCell, x: Tensor, h: Tensor) -> Tensor:
    """
    Un paso de la celda GRU.

    z = σ(W_z x + U_z h + b_z)
    r = σ(W_r x + U_r h + b_r)
    h̃ = tanh(W_h x + U_h (r ⊙ h) + b_h)
    h' = (1 - z) ⊙ h + z ⊙ h̃

    Args:
        cell: Celda con dimensiones fijas
        x: Entrada [input] o [B×input]
        h: Estado [hidden] o [B×hidden]
    """
    x_rows, was_vector = _as_rows(x, cell.input_dim, "gru_step(x)")
    h_rows, h_vector = _as_rows(h, cell.hidden_dim, "gru_step(h)")
    if was_vector != h_vector or x_rows.shape[0] != h_rows.shape[0]:
        raise DimensionError("gru_step", x.shape, h.shape)

    shape = h_rows.shape

    def gate(W, U, b, state):
        pre = add(_linear(x_rows, W), _linear(state, U))
        return add(pre, expand(b, shape))

    z = sigmoid(gate(cell.W_z, cell.U_z, cell.b_z, h_rows))
    r = sigmoid(gate(cell.W_r, cell.U_r, cell.b_r, h_rows))
    candidate = tanh(gate(cell.W_h, cell.U_h, cell.b_h, hadamard(r, h_rows)))

    ones = constant(np.ones(shape), dtype=h_rows.dtype)
    updated = add(hadamard(sub(ones, z), h_rows), hadamard(z, candidate))
    if was_vector:
        return reshape(updated, (cell.hidden_dim,))
    return updated


# ============================================
# TABLAS DE EMBEDDINGS
# ============================================
@dataclass
class EmbeddingTable:
    """Tabla de embeddings [vocab×dim] identificada por nombre"""
    name: str
    rows: Tensor

    @property
    def vocab_size(self) -> int:
        return self.rows.shape[0]

    @property
    def dim(self) -> int:
        return self.rows.shape[1]

    @classmethod
    def create(cls, name: str, vocab_size: int, dim: int, rng: Rng) -> "EmbeddingTable":
        # Misma convención Kaiming que las capas afines, con fan_in = dim
        rows = kaiming_uniform(dim, (vocab_size, dim), rng, name=name)
        return cls(name, rows)

    @classmethod
    def from_parameters(cls, params: Mapping[str, Tensor], name: str) -> "EmbeddingTable":
        return cls(name, params[name])

    def parameters(self) -> Dict[str, Tensor]:
        return {self.name: self.rows}


def embed_lookup(table: EmbeddingTable, index) -> Tensor:
    """
    Fila(s) de la tabla para un índice entero o un arreglo de índices.

    Raises:
        VocabularyError: índice fuera de [0, vocab_size)
    """
    indices = np.asarray(index, dtype=np.int64)
    if indices.size == 0:
        raise DomainError("embed_lookup", f"sin índices para la tabla '{table.name}'")
    out_of_range = (indices < 0) | (indices >= table.vocab_size)
    if out_of_range.any():
        bad = int(indices[out_of_range].reshape(-1)[0])
        raise VocabularyError(table.name, bad, table.vocab_size)
    return gather_rows(table.rows, indices)


def embed_multi_hot(table: EmbeddingTable, multi_hot: np.ndarray) -> Tensor:
    """
    Suma de las filas activas de una máscara multi-hot [B×vocab] -> [B×dim].

    La suma es un producto matricial con la máscara, por lo que no depende del
    orden en que se listaron los valores activos.
    """
    mask = np.asarray(multi_hot)
    if mask.ndim != 2 or mask.shape[1] != table.vocab_size:
        raise DimensionError("embed_multi_hot", mask.shape, table.rows.shape)
    return matmul(constant(mask, dtype=table.rows.dtype), table.rows)


# ============================================
# PILA MLP
# ============================================
def build_mlp(prefix: str, in_dim: int, widths: Sequence[int], rng: Rng) -> List[Affine]:
    """Crea capas ``prefix.0`` ... ``prefix.{n-1}`` encadenadas desde ``in_dim``"""
    layers = []
    current = in_dim
    for position, width in enumerate(widths):
        layers.append(Affine.create(f"{prefix}.{position}", current, width, rng))
        current = width
    return layers


def mlp_from_parameters(params: Mapping[str, Tensor], prefix: str, depth: int) -> List[Affine]:
    return [Affine.from_parameters(params, f"{prefix}.{position}") for position in range(depth)]


def mlp_forward(layers: Sequence[Affine], x: Tensor) -> Tensor:
    """
    Composición afín / leaky_relu; sin activación después de la última capa.

    Raises:
        DimensionError: si los anchos consecutivos no encadenan
    """
    if not layers:
        raise DomainError("mlp_forward", "se requiere al menos una capa")
    for previous, following in zip(layers, layers[1:]):
        if previous.out_dim != following.in_dim:
            raise DimensionError("mlp_forward", previous.weight.shape, following.weight.shape)

    out = x
    for position, layer in enumerate(layers):
        out = affine_forward(layer, out)
        if position < len(layers) - 1:
            out = leaky_relu(out)
    return out
