"""
place_graph.py - Grafo de lugar de dos nodos unidos por un puerto

El nodo de usuario (N_u) y el nodo de ítem (N_i) intercambian estados por el
único puerto bidireccional. Con un solo vecino la atención sería idénticamente
1, por lo que aquí no hay proyecciones de atención.
"""

from dataclasses import dataclass, replace

from src.autodiff import Tensor
from src.nn import GruCell, gru_step
from src.utils.exceptions import ConstructionError


@dataclass(frozen=True)
class PlaceGraph:
    """Estados N_u y N_i más la celda GRU compartida del grafo de lugar"""
    user_state: Tensor
    item_state: Tensor
    cell: GruCell

    def __post_init__(self):
        if self.user_state.shape != self.item_state.shape:
            raise ConstructionError("PlaceGraph", f"formas distintas {list(self.user_state.shape)} y {list(self.item_state.shape)}")


def place_round(graph: PlaceGraph) -> PlaceGraph:
    """
    Intercambio síncrono por el puerto:
    N_u' = GRU(N_i, N_u), N_i' = GRU(N_u, N_i), ambos desde los estados previos.
    """
    user_state = gru_step(graph.cell, graph.item_state, graph.user_state)
    item_state = gru_step(graph.cell, graph.user_state, graph.item_state)
    return replace(graph, user_state=user_state, item_state=item_state)


def run_place_rounds(graph: PlaceGraph, rounds: int) -> PlaceGraph:
    for _ in range(rounds):
        graph = place_round(graph)
    return graph
