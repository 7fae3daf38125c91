"""
Pruebas de capas: afín, GRU, embeddings y MLP
"""

import numpy as np
import pytest

from src.autodiff import Rng, Tape, Tensor, constant, reduce_sum, use_precision
from src.nn import (
    Affine, EmbeddingTable, GruCell, affine_forward, build_mlp, embed_lookup, embed_multi_hot,
    gru_step, linear_forward, mlp_forward, mlp_from_parameters,
)
from src.utils.exceptions import DimensionError, VocabularyError


def param(values, name):
    return Tensor(values, requires_grad=True, name=name)


# =============================================================================
# Afín
# =============================================================================

def test_affine_identity():
    layer = Affine(param(np.eye(3), "l.weight"), param(np.zeros(3), "l.bias"))
    out = affine_forward(layer, constant([1.0, -2.0, 0.5]))
    np.testing.assert_allclose(out.numpy(), [1.0, -2.0, 0.5])


def test_affine_zero_input_returns_bias():
    layer = Affine.create("l", 4, 2, Rng(0))
    layer.bias.assign(np.array([0.25, -1.5]))
    out = affine_forward(layer, constant(np.zeros((3, 4))))
    np.testing.assert_allclose(out.numpy(), np.tile([0.25, -1.5], (3, 1)))


def test_affine_create_shapes_and_names():
    layer = Affine.create("head.0", 5, 3, Rng(1))
    assert layer.weight.shape == (3, 5) and layer.bias.shape == (3,)
    assert set(layer.parameters()) == {"head.0.weight", "head.0.bias"}
    np.testing.assert_array_equal(layer.bias.numpy(), np.zeros(3))


def test_affine_rejects_wrong_width():
    layer = Affine.create("l", 4, 2, Rng(0))
    with pytest.raises(DimensionError):
        affine_forward(layer, constant(np.ones(3)))


def test_linear_forward_has_no_bias():
    weight = param([[2.0, 0.0], [0.0, 3.0]], "w")
    np.testing.assert_allclose(linear_forward(weight, constant([1.0, 1.0])).numpy(), [2.0, 3.0])
    np.testing.assert_allclose(linear_forward(weight, constant(np.zeros((2, 2)))).numpy(), np.zeros((2, 2)))


# =============================================================================
# GRU
# =============================================================================

def _zero_cell(input_dim, hidden_dim):
    cell = GruCell.create("gru", input_dim, hidden_dim, Rng(0))
    for tensor in cell.parameters().values():
        tensor.assign(np.zeros(tensor.shape))
    return cell


def test_gru_all_zeros_gives_zero_state():
    cell = _zero_cell(3, 2)
    out = gru_step(cell, constant(np.zeros(3)), constant(np.zeros(2)))
    np.testing.assert_array_equal(out.numpy(), np.zeros(2))


def test_gru_closed_update_gate_keeps_state():
    cell = GruCell.create("gru", 3, 2, Rng(4))
    cell.b_z.assign(np.full(2, -1e6))
    h = constant([0.3, -0.7])
    out = gru_step(cell, constant([1.0, 2.0, -1.0]), h)
    np.testing.assert_allclose(out.numpy(), h.numpy(), atol=1e-6)


def test_gru_open_update_gate_takes_candidate():
    cell = _zero_cell(2, 2)
    cell.b_z.assign(np.full(2, 1e6))
    cell.b_h.assign(np.array([0.5, -0.5]))
    out = gru_step(cell, constant([1.0, 1.0]), constant([0.9, 0.9]))
    np.testing.assert_allclose(out.numpy(), np.tanh([0.5, -0.5]), rtol=1e-6)


def test_gru_batch_matches_single_rows():
    cell = GruCell.create("gru", 3, 4, Rng(5))
    rng = np.random.default_rng(0)
    xs, hs = rng.normal(size=(2, 3)), rng.normal(size=(2, 4))
    batch = gru_step(cell, constant(xs), constant(hs)).numpy()
    for row in range(2):
        single = gru_step(cell, constant(xs[row]), constant(hs[row])).numpy()
        np.testing.assert_allclose(batch[row], single, rtol=1e-6)


def test_gru_parameters_are_named():
    cell = GruCell.create("user.link.gru", 3, 4, Rng(0))
    names = set(cell.parameters())
    assert "user.link.gru.W_z" in names and "user.link.gru.b_h" in names
    assert len(names) == 9
    assert cell.W_z.shape == (4, 3) and cell.U_z.shape == (4, 4)


def test_gru_gradient_matches_finite_differences(finite_difference):
    with use_precision(np.float64):
        cell = GruCell.create("gru", 2, 3, Rng(6))
        x, h = constant([0.4, -0.2]), constant([0.1, 0.5, -0.3])
        with Tape() as tape:
            root = reduce_sum(gru_step(cell, x, h))
        grads = tape.backward(root, cell.parameters())

        def loss():
            return float(gru_step(cell, x, h).numpy().sum())

        for name in ("gru.W_h", "gru.U_r", "gru.b_z"):
            tensor = cell.parameters()[name]
            indices = list(range(tensor.size))
            numeric = finite_difference(loss, tensor.data, indices)
            np.testing.assert_allclose(numeric, grads[name].reshape(-1), rtol=1e-4, atol=1e-8)


def test_gru_rejects_state_width_mismatch():
    cell = GruCell.create("gru", 3, 2, Rng(0))
    with pytest.raises(DimensionError):
        gru_step(cell, constant(np.zeros(3)), constant(np.zeros(3)))


# =============================================================================
# Embeddings
# =============================================================================

def test_lookup_returns_row_verbatim():
    table = EmbeddingTable.create("movie_id", 5, 3, Rng(2))
    np.testing.assert_array_equal(embed_lookup(table, 0).numpy(), table.rows.numpy()[0])
    np.testing.assert_array_equal(embed_lookup(table, [4, 0]).numpy(), table.rows.numpy()[[4, 0]])


def test_lookup_gradient_touches_only_used_rows():
    table = EmbeddingTable.create("gender", 4, 2, Rng(2))
    with Tape() as tape:
        root = reduce_sum(embed_lookup(table, [2, 2, 0]))
    grads = tape.backward(root, table.parameters())
    np.testing.assert_array_equal(grads["gender"], [[1, 1], [0, 0], [2, 2], [0, 0]])


@pytest.mark.parametrize("index", [-1, 5, 99])
def test_lookup_out_of_range(index):
    table = EmbeddingTable.create("age", 5, 2, Rng(0))
    with pytest.raises(VocabularyError):
        embed_lookup(table, index)


def test_multi_hot_sums_active_rows():
    table = EmbeddingTable.create("genre", 4, 3, Rng(3))
    mask = np.array([[1, 0, 1, 0], [0, 0, 0, 1]])
    out = embed_multi_hot(table, mask).numpy()
    rows = table.rows.numpy()
    np.testing.assert_allclose(out[0], rows[0] + rows[2], rtol=1e-6)
    np.testing.assert_allclose(out[1], rows[3], rtol=1e-6)


def test_multi_hot_rejects_wrong_vocab_width():
    table = EmbeddingTable.create("genre", 4, 3, Rng(3))
    with pytest.raises(DimensionError):
        embed_multi_hot(table, np.ones((1, 5)))


# =============================================================================
# MLP
# =============================================================================

def test_mlp_shapes_and_names():
    layers = build_mlp("head", 10, (8, 4, 1), Rng(0))
    assert [layer.weight.shape for layer in layers] == [(8, 10), (4, 8), (1, 4)]
    assert layers[2].weight.name == "head.2.weight"
    out = mlp_forward(layers, constant(np.ones((6, 10))))
    assert out.shape == (6, 1)


def test_mlp_last_layer_is_linear():
    layers = build_mlp("head", 1, (1,), Rng(0))
    layers[0].weight.assign(np.array([[1.0]]))
    np.testing.assert_allclose(mlp_forward(layers, constant([-3.0])).numpy(), [-3.0])


def test_mlp_hidden_layers_use_leaky_relu():
    layers = build_mlp("head", 1, (1, 1), Rng(0))
    layers[0].weight.assign(np.array([[1.0]]))
    layers[1].weight.assign(np.array([[1.0]]))
    np.testing.assert_allclose(mlp_forward(layers, constant([-3.0])).numpy(), [-0.03], rtol=1e-6)


def test_mlp_rebuilds_from_parameters():
    layers = build_mlp("head", 3, (2, 1), Rng(0))
    params = {}
    for layer in layers:
        params.update(layer.parameters())
    rebuilt = mlp_from_parameters(params, "head", 2)
    x = constant([[0.1, 0.2, 0.3]])
    np.testing.assert_array_equal(mlp_forward(rebuilt, x).numpy(), mlp_forward(layers, x).numpy())
