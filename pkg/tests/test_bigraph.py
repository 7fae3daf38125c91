"""
Pruebas de grafos de enlaces, atención y grafo de lugar
"""

import numpy as np
import pytest

from src.autodiff import Rng, Tape, Tensor, add, constant, hadamard, reduce_sum, use_precision
from src.bigraph import (
    AttentionProjections, EdgeWeights, PlaceGraph, aggregate, assign_embeddings, attention_coefficients,
    edge_weights, encapsulate, link_round, place_round, run_link_rounds, run_place_rounds,
)
from src.nn import Affine, GruCell, gru_step
from src.utils.exceptions import ConstructionError, DimensionError, DomainError


def identity(dim, name):
    return Tensor(np.eye(dim), requires_grad=True, name=name)


def frozen_cell(dim):
    cell = GruCell.create("gru", dim, dim, Rng(0))
    cell.b_z.assign(np.full(dim, -1e6))
    return cell


@pytest.fixture
def states():
    rng = np.random.default_rng(11)
    return [constant(rng.normal(size=3)) for _ in range(4)]


# =============================================================================
# Atención
# =============================================================================

def test_single_neighbor_gets_weight_one():
    weights = attention_coefficients(constant([0.3, -1.0]), [constant([2.0, 5.0])],
                                     identity(2, "k"), identity(2, "q"))
    np.testing.assert_allclose(weights.weights.numpy(), [1.0])


def test_identical_messages_share_weight():
    message = constant([0.4, 0.1])
    projections = AttentionProjections.create("a", 2, Rng(3))
    weights = attention_coefficients(constant([1.0, 2.0]), [message, message],
                                     projections.key, projections.query)
    np.testing.assert_allclose(weights.weights.numpy(), [0.5, 0.5], rtol=1e-6)


def test_identity_projections_reference_values():
    weights = attention_coefficients(constant([1.0, 0.0]), [constant([1.0, 0.0]), constant([0.0, 1.0])],
                                     identity(2, "k"), identity(2, "q"))
    np.testing.assert_allclose(weights.weights.numpy(), [0.7311, 0.2689], atol=1e-4)


def test_attention_requires_messages():
    with pytest.raises(DomainError):
        attention_coefficients(constant([1.0]), [], identity(1, "k"), identity(1, "q"))


def test_attention_projection_names():
    projections = AttentionProjections.create("user.link.attention", 4, Rng(0))
    assert set(projections.parameters()) == {
        "user.link.attention.key.weight", "user.link.attention.key.bias", "user.link.attention.query.weight"}
    np.testing.assert_array_equal(projections.key_bias.numpy(), np.zeros(4))
    rebuilt = AttentionProjections.from_parameters(projections.parameters(), "user.link.attention")
    assert rebuilt.key is projections.key and rebuilt.key_bias is projections.key_bias


def test_key_bias_changes_weights(states):
    projections = AttentionProjections.create("a", 3, Rng(6))
    before = attention_coefficients(states[0], states[1:], projections.key, projections.query,
                                    projections.key_bias).weights.numpy()
    projections.key_bias.assign(np.array([1.5, -2.0, 0.7]))
    after = attention_coefficients(states[0], states[1:], projections.key, projections.query,
                                   projections.key_bias).weights.numpy()
    assert not np.allclose(before, after)


def test_key_bias_receives_gradient(states):
    with use_precision(np.float64):
        projections = AttentionProjections.create("a", 3, Rng(6))
        messages = [constant(s.numpy()) for s in states[1:]]
        with Tape() as tape:
            weights = attention_coefficients(constant(states[0].numpy()), messages, projections.key,
                                             projections.query, projections.key_bias)
            root = reduce_sum(hadamard(weights.weights, constant([1.0, -2.0, 3.0])))
        grads = tape.backward(root, projections.parameters())
    assert np.any(grads["a.key.bias"] != 0)


def test_edge_weights_rows_sum_to_one(states):
    graph = assign_embeddings([(f"f{k}", s) for k, s in enumerate(states)], frozen_cell(3),
                              AttentionProjections.create("a", 3, Rng(9)))
    for row in edge_weights(graph):
        values = row.weights.numpy()
        assert values.shape == (3,)
        assert np.all(values >= 0)
        assert values.sum() == pytest.approx(1.0, rel=1e-6)


def test_edge_weights_without_attention_are_ones(states):
    graph = assign_embeddings([(f"f{k}", s) for k, s in enumerate(states)], frozen_cell(3))
    for row in edge_weights(graph):
        np.testing.assert_array_equal(row.weights.numpy(), np.ones(3))


# =============================================================================
# Grafo de enlaces
# =============================================================================

def test_complete_topology(states):
    graph = assign_embeddings([(f"f{k}", s) for k, s in enumerate(states)], frozen_cell(3))
    assert graph.node_count == 4
    assert graph.edge_count() == 12
    assert graph.neighbors(2) == [0, 1, 3]
    assert graph.state_of("f1") is states[1]


def test_two_node_message_is_other_state():
    h1, h2 = constant([1.0, 2.0]), constant([-3.0, 0.5])
    graph = assign_embeddings([("a", h1), ("b", h2)], frozen_cell(2))
    message = aggregate([graph.states[k] for k in graph.neighbors(0)])
    np.testing.assert_array_equal(message.numpy(), h2.numpy())


def test_unit_weights_match_plain_sum(states):
    plain = aggregate(states[:3]).numpy()
    weighted = aggregate(states[:3], EdgeWeights(constant(np.ones(3)))).numpy()
    assert plain.tobytes() == weighted.tobytes()


def test_link_round_is_synchronous(states):
    cell = GruCell.create("gru", 3, 3, Rng(2))
    graph = assign_embeddings([(f"f{k}", s) for k, s in enumerate(states[:3])], cell)
    updated = link_round(graph)
    for node in range(3):
        others = [states[k] for k in range(3) if k != node]
        expected = gru_step(cell, add(others[0], others[1]), states[node]).numpy()
        np.testing.assert_allclose(updated.states[node].numpy(), expected, rtol=1e-6)


def test_one_round_reaches_every_node(states):
    cell = GruCell.create("gru", 3, 3, Rng(2))
    perturbed = [constant(states[0].numpy() + 0.5)] + states[1:]
    base = link_round(assign_embeddings([(f"f{k}", s) for k, s in enumerate(states)], cell))
    moved = link_round(assign_embeddings([(f"f{k}", s) for k, s in enumerate(perturbed)], cell))
    for node in range(1, 4):
        assert not np.allclose(moved.states[node].numpy(), base.states[node].numpy()), node


@pytest.mark.parametrize("with_attention", [False, True])
def test_relabeling_nodes_permutes_states(states, with_attention):
    cell = GruCell.create("gru", 3, 3, Rng(4))
    attention = AttentionProjections.create("a", 3, Rng(5)) if with_attention else None
    features = [(f"f{k}", s) for k, s in enumerate(states)]
    forward = run_link_rounds(assign_embeddings(features, cell, attention), 2)
    backward = run_link_rounds(assign_embeddings(features[::-1], cell, attention), 2)
    for name, _ in features:
        np.testing.assert_allclose(backward.state_of(name).numpy(), forward.state_of(name).numpy(),
                                   rtol=1e-5, atol=1e-6)


def test_frozen_cell_keeps_states(states):
    graph = assign_embeddings([(f"f{k}", s) for k, s in enumerate(states)], frozen_cell(3))
    after = run_link_rounds(graph, 3)
    for before, state in zip(states, after.states):
        np.testing.assert_allclose(state.numpy(), before.numpy(), atol=1e-6)


def test_zero_rounds_returns_initial_graph(states):
    graph = assign_embeddings([("a", states[0]), ("b", states[1])], frozen_cell(3))
    assert run_link_rounds(graph, 0) is graph


def test_single_node_graph_uses_zero_message():
    cell = GruCell.create("gru", 2, 2, Rng(1))
    h = constant([0.2, -0.4])
    graph = assign_embeddings([("only", h)], cell)
    expected = gru_step(cell, constant(np.zeros(2)), h).numpy()
    np.testing.assert_allclose(link_round(graph).states[0].numpy(), expected, rtol=1e-6)


def test_construction_errors(states):
    cell = frozen_cell(3)
    with pytest.raises(ConstructionError):
        assign_embeddings([], cell)
    with pytest.raises(ConstructionError):
        assign_embeddings([("a", states[0]), ("a", states[1])], cell)
    with pytest.raises(ConstructionError):
        assign_embeddings([("a", states[0]), ("b", constant(np.zeros(2)))], cell)
    with pytest.raises(ConstructionError):
        assign_embeddings([("a", constant(np.zeros(2)))], cell)


def test_encapsulate_with_zero_weights_gives_bias(states):
    graph = assign_embeddings([(f"f{k}", s) for k, s in enumerate(states)], frozen_cell(3))
    layer = Affine.create("encoder.0", 12, 5, Rng(0))
    layer.weight.assign(np.zeros((5, 12)))
    layer.bias.assign(np.arange(5.0))
    np.testing.assert_array_equal(encapsulate(graph, [layer]).numpy(), np.arange(5.0))


def test_encapsulate_rejects_wrong_width(states):
    graph = assign_embeddings([(f"f{k}", s) for k, s in enumerate(states)], frozen_cell(3))
    with pytest.raises(DimensionError):
        encapsulate(graph, [Affine.create("encoder.0", 9, 5, Rng(0))])


# =============================================================================
# Grafo de lugar
# =============================================================================

def test_place_round_is_synchronous():
    cell = GruCell.create("place.gru", 3, 3, Rng(8))
    user, item = constant([0.1, 0.2, 0.3]), constant([-0.5, 0.0, 0.9])
    updated = place_round(PlaceGraph(user, item, cell))
    np.testing.assert_allclose(updated.user_state.numpy(), gru_step(cell, item, user).numpy(), rtol=1e-6)
    np.testing.assert_allclose(updated.item_state.numpy(), gru_step(cell, user, item).numpy(), rtol=1e-6)


def test_place_rounds_with_frozen_cell():
    user, item = constant([0.1, 0.2]), constant([-0.5, 0.9])
    result = run_place_rounds(PlaceGraph(user, item, frozen_cell(2)), 4)
    np.testing.assert_allclose(result.user_state.numpy(), user.numpy(), atol=1e-6)
    np.testing.assert_allclose(result.item_state.numpy(), item.numpy(), atol=1e-6)


def test_place_graph_rejects_mismatched_states():
    with pytest.raises(ConstructionError):
        PlaceGraph(constant([1.0, 2.0]), constant([1.0, 2.0, 3.0]), frozen_cell(2))
