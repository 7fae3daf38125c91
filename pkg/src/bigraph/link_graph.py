"""
link_graph.py - Grafos de enlaces completamente conectados

Cada entidad (usuario, ítem) tiene un grafo de enlaces cuyos nodos son sus
características. La topología es completa y sin auto-bucles; todos los nodos
comparten una única celda GRU. Una ronda de paso de mensajes es síncrona:
todos los nodos leen el estado del tiempo t antes de actualizarse.
"""

import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.autodiff import Tensor, add_all, concat, constant, expand, hadamard
from src.bigraph.attention import AttentionProjections, EdgeWeights, attention_coefficients
from src.nn import Affine, GruCell, gru_step, mlp_forward
from src.utils.exceptions import ConstructionError, DimensionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinkGraph:
    """
    Grafo de enlaces de una entidad.

    Attributes:
        node_names: Nombres de las características en el orden declarado
        states: Estado h_i de cada nodo ([d] o [B×d]), mismo orden
        cell: Celda GRU compartida por todos los nodos
        attention: Proyecciones de atención, o None para la suma sin pesos
    """
    node_names: Tuple[str, ...]
    states: Tuple[Tensor, ...]
    cell: GruCell
    attention: Optional[AttentionProjections] = None

    @property
    def node_count(self) -> int:
        return len(self.node_names)

    @property
    def link_dim(self) -> int:
        return self.states[0].shape[-1]

    def neighbors(self, node: int) -> List[int]:
        """Vecinos del nodo en orden canónico de índice (todos excepto él mismo)"""
        return [k for k in range(self.node_count) if k != node]

    def edge_count(self) -> int:
        """Aristas dirigidas: n·(n-1)"""
        return self.node_count * (self.node_count - 1)

    def state_of(self, name: str) -> Tensor:
        return self.states[self.node_names.index(name)]


def assign_embeddings(features: Sequence[Tuple[str, Tensor]], cell: GruCell,
                      attention: Optional[AttentionProjections] = None) -> LinkGraph:
    """
    Construye un grafo completo con h_{i,0} = e_i.

    Args:
        features: Pares (nombre, embedding) en el orden declarado del esquema
        cell: Celda GRU compartida
        attention: Proyecciones opcionales para re-ponderar aristas

    Raises:
        ConstructionError: lista vacía, nombres duplicados o dimensiones distintas
    """
    if not features:
        raise ConstructionError("LinkGraph", "se requiere al menos un nodo")

    names = tuple(name for name, _ in features)
    if len(set(names)) != len(names):
        raise ConstructionError("LinkGraph", f"nombres de nodo duplicados: {list(names)}")

    states = tuple(state for _, state in features)
    reference = states[0].shape
    for name, state in features:
        if state.shape != reference:
            raise ConstructionError("LinkGraph", f"el nodo '{name}' tiene forma {list(state.shape)}, se esperaba {list(reference)}")
    if reference[-1] != cell.hidden_dim or cell.input_dim != cell.hidden_dim:
        raise ConstructionError("LinkGraph", f"la celda GRU ({cell.input_dim}->{cell.hidden_dim}) no coincide con link_dim {reference[-1]}")

    return LinkGraph(names, states, cell, attention)


def _zero_message(reference: Tensor) -> Tensor:
    return constant(np.zeros(reference.shape), dtype=reference.dtype)


def aggregate(messages: Sequence[Tensor], weights: Optional[EdgeWeights] = None) -> Tensor:
    """
    M_i = Σ_k a_{i,k}·m_{i,k} en el orden dado; sin pesos es la suma simple.
    """
    if weights is None:
        return add_all(list(messages))
    weighted = []
    for position, message in enumerate(messages):
        coefficient = expand(weights.column(position), message.shape)
        weighted.append(hadamard(coefficient, message))
    return add_all(weighted)


def edge_weights(graph: LinkGraph) -> List[Optional[EdgeWeights]]:
    """
    Pesos de aristas de cada nodo para el estado actual del grafo.

    Con atención desactivada retorna pesos exactamente 1; un nodo sin
    vecinos retorna None.
    """
    result = []
    for node in range(graph.node_count):
        neighbors = graph.neighbors(node)
        if not neighbors:
            result.append(None)
            continue
        messages = [graph.states[k] for k in neighbors]
        if graph.attention is None:
            shape = graph.states[node].shape[:-1] + (len(neighbors),)
            result.append(EdgeWeights(constant(np.ones(shape), dtype=graph.states[node].dtype)))
        else:
            result.append(attention_coefficients(graph.states[node], messages,
                                                 graph.attention.key, graph.attention.query,
                                                 graph.attention.key_bias))
    return result


def link_round(graph: LinkGraph) -> LinkGraph:
    """
    Una ronda síncrona de paso de mensajes.

    Cada nodo agrega los estados de sus vecinos al tiempo t (sin transformar
    cada mensaje) y actualiza con la GRU compartida:
    h_{i,t+1} = GRU(x = M_i, h = h_{i,t}).
    """
    snapshot = graph.states
    if graph.attention is not None:
        weights = edge_weights(graph)
    else:
        weights = [None] * graph.node_count

    updated = []
    for node in range(graph.node_count):
        neighbors = graph.neighbors(node)
        if neighbors:
            message = aggregate([snapshot[k] for k in neighbors], weights[node])
        else:
            message = _zero_message(snapshot[node])
        updated.append(gru_step(graph.cell, message, snapshot[node]))

    return replace(graph, states=tuple(updated))


def run_link_rounds(graph: LinkGraph, rounds: int) -> LinkGraph:
    for _ in range(rounds):
        graph = link_round(graph)
    return graph


def encapsulate(graph: LinkGraph, encoder: Sequence[Affine]) -> Tensor:
    """
    Concatena los estados en el orden declarado y aplica el codificador.

    El resultado es el estado del nodo de la entidad en el grafo de lugar.

    Raises:
        DimensionError: si el ancho de entrada del codificador no es n·link_dim
    """
    expected = graph.node_count * graph.link_dim
    if not encoder or encoder[0].in_dim != expected:
        got = encoder[0].weight.shape if encoder else ()
        raise DimensionError("encapsulate", (graph.node_count, graph.link_dim), got,
                             reason=f"se esperaba ancho de entrada {expected}")
    joined = concat(list(graph.states), axis=-1)
    return mlp_forward(encoder, joined)
