"""
attention.py - Re-ponderación de aristas con atención clave/consulta

El estado del nodo actúa como clave y cada mensaje vecino como consulta y
valor: score_j = (θ_k·h + b_k)ᵀ(θ_q·m_j), a = softmax(score).

Solo la clave lleva sesgo. Un sesgo en la consulta sumaría (θ_k·h)ᵀb_q, igual
para todos los vecinos, y el softmax lo anula; el sesgo de la clave aporta
b_kᵀ(θ_q·m_j), que sí cambia de un vecino a otro.
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence

from src.autodiff import (
    Rng, Tensor, add, concat, expand, hadamard, kaiming_uniform, reduce_sum, softmax, take, zeros,
)
from src.nn import linear_forward
from src.utils.exceptions import DomainError


@dataclass
class AttentionProjections:
    """Clave afín (θ_k, b_k) y consulta lineal θ_q [d×d] de un grafo de enlaces"""
    key: Tensor
    query: Tensor
    key_bias: Tensor

    @classmethod
    def create(cls, prefix: str, dim: int, rng: Rng) -> "AttentionProjections":
        return cls(
            key=kaiming_uniform(dim, (dim, dim), rng, name=f"{prefix}.key.weight"),
            query=kaiming_uniform(dim, (dim, dim), rng, name=f"{prefix}.query.weight"),
            key_bias=zeros((dim,), name=f"{prefix}.key.bias"),
        )

    @classmethod
    def from_parameters(cls, params: Mapping[str, Tensor], prefix: str) -> "AttentionProjections":
        return cls(key=params[f"{prefix}.key.weight"], query=params[f"{prefix}.query.weight"],
                   key_bias=params[f"{prefix}.key.bias"])

    def parameters(self) -> Dict[str, Tensor]:
        return {t.name: t for t in (self.key, self.key_bias, self.query)}


@dataclass
class EdgeWeights:
    """
    Pesos a_{i,·} de un nodo sobre sus n vecinos.

    ``weights`` tiene forma [n] (un ejemplo) o [B×n] (lote); la última
    dimensión sigue el orden canónico de los vecinos.
    """
    weights: Tensor

    @property
    def neighbor_count(self) -> int:
        return self.weights.shape[-1]

    def column(self, position: int) -> Tensor:
        """Peso del vecino ``position`` con el eje conservado ([1] o [B×1])"""
        return take(self.weights, position, axis=-1)


def attention_coefficients(h: Tensor, messages: Sequence[Tensor], key: Tensor, query: Tensor,
                           key_bias: Optional[Tensor] = None) -> EdgeWeights:
    """
    Coeficientes de atención de un nodo sobre sus mensajes entrantes.

    Args:
        h: Estado del nodo ([d] o [B×d])
        messages: Estados de los vecinos, misma forma que h
        key: θ_k [d×d]
        query: θ_q [d×d]
        key_bias: b_k [d]; None equivale a cero

    Raises:
        DomainError: lista de mensajes vacía
    """
    if not messages:
        raise DomainError("attention_coefficients", "el nodo no tiene mensajes entrantes")

    projected_key = linear_forward(key, h)
    if key_bias is not None:
        projected_key = add(projected_key, expand(key_bias, projected_key.shape))
    scores: List[Tensor] = []
    for message in messages:
        projected_query = linear_forward(query, message)
        scores.append(reduce_sum(hadamard(projected_key, projected_query), axis=-1, keepdims=True))

    return EdgeWeights(softmax(concat(scores, axis=-1), axis=-1))
