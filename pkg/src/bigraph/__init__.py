"""
bigraph - Grafos de enlaces por entidad y grafo de lugar de dos nodos
"""

from src.bigraph.attention import AttentionProjections, EdgeWeights, attention_coefficients
from src.bigraph.link_graph import (
    LinkGraph, aggregate, assign_embeddings, edge_weights, encapsulate, link_round, run_link_rounds,
)
from src.bigraph.place_graph import PlaceGraph, place_round, run_place_rounds

__all__ = [
    'AttentionProjections', 'EdgeWeights', 'attention_coefficients',
    'LinkGraph', 'aggregate', 'assign_embeddings', 'edge_weights', 'encapsulate', 'link_round',
    'run_link_rounds', 'PlaceGraph', 'place_round', 'run_place_rounds',
]
