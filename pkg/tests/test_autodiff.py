"""
Pruebas del motor de tensores: operaciones, cinta de backward y generador aleatorio
"""

import numpy as np
import pytest

from src.autodiff import (
    Rng, Tape, Tensor, add, concat, constant, elementwise, expand, gather_rows, hadamard, kaiming_bound,
    kaiming_uniform, leaky_relu, matmul, reduce_sum, sigmoid, softmax, sub, tanh, use_precision,
)
from src.utils.exceptions import ContractError, DimensionError, DomainError


def leaf(values, name="x"):
    return Tensor(values, requires_grad=True, name=name)


# =============================================================================
# Álgebra lineal
# =============================================================================

def test_matmul_identity():
    out = matmul(constant(np.eye(2)), constant([[3.0], [7.0]]))
    np.testing.assert_array_equal(out.numpy(), [[3.0], [7.0]])


def test_matmul_hand_computed():
    out = matmul(constant([[1.0, 2.0], [3.0, 4.0]]), constant([[1.0], [1.0]]))
    np.testing.assert_array_equal(out.numpy(), [[3.0], [7.0]])


def test_matmul_rejects_mismatched_inner_dimension():
    with pytest.raises(DimensionError):
        matmul(constant(np.ones((2, 3))), constant(np.ones((2, 3))))


def test_matmul_gradient_matches_finite_differences(finite_difference):
    rng = np.random.default_rng(0)
    with use_precision(np.float64):
        a = leaf(rng.normal(size=(4, 5)), "a")
        b = constant(rng.normal(size=(5, 3)))
        with Tape() as tape:
            root = reduce_sum(matmul(a, b))
        grads = tape.backward(root, {"a": a})

        def loss():
            return float(matmul(a, b).numpy().sum())

        indices = rng.choice(a.size, size=20, replace=True)
        numeric = finite_difference(loss, a.data, indices)
    np.testing.assert_allclose(numeric, grads["a"].reshape(-1)[indices], rtol=1e-5)


# =============================================================================
# Elemento a elemento
# =============================================================================

def test_sigmoid_at_zero():
    assert sigmoid(constant([0.0])).item() == pytest.approx(0.5)


def test_sigmoid_is_stable_for_large_inputs():
    out = sigmoid(constant([-1000.0, 1000.0])).numpy()
    assert np.all(np.isfinite(out))
    np.testing.assert_allclose(out, [0.0, 1.0])


def test_leaky_relu_negative_slope():
    assert leaky_relu(constant([-1.0])).item() == pytest.approx(-0.01)
    assert leaky_relu(constant([2.0])).item() == pytest.approx(2.0)


def test_tanh_gradient_matches_finite_differences(finite_difference):
    with use_precision(np.float64):
        x = leaf([0.3])
        with Tape() as tape:
            root = reduce_sum(tanh(x))
        grads = tape.backward(root, {"x": x})
        numeric = finite_difference(lambda: float(np.tanh(x.data).sum()), x.data, [0])
    np.testing.assert_allclose(numeric, grads["x"], rtol=1e-6)


def test_binary_ops_require_identical_shapes():
    with pytest.raises(DimensionError):
        add(constant(np.ones(3)), constant(np.ones(4)))
    with pytest.raises(DimensionError):
        hadamard(constant(np.ones((2, 2))), constant(np.ones(4)))


def test_elementwise_dispatch():
    a, b = constant([1.0, 2.0]), constant([3.0, 5.0])
    np.testing.assert_array_equal(elementwise("sub", a, b).numpy(), [-2.0, -3.0])
    np.testing.assert_array_equal(elementwise("hadamard", a, b).numpy(), [3.0, 10.0])
    with pytest.raises(DomainError):
        elementwise("cosh", a)
    with pytest.raises(DomainError):
        elementwise("tanh", a, b)


def test_expand_backward_sums_broadcast_axis():
    with use_precision(np.float64):
        bias = leaf([1.0, 2.0], "bias")
        with Tape() as tape:
            root = reduce_sum(expand(bias, (3, 2)))
        grads = tape.backward(root, {"bias": bias})
    np.testing.assert_array_equal(grads["bias"], [3.0, 3.0])


_OPERATIONS = {
    "sigmoid": lambda a, b: sigmoid(a),
    "leaky_relu": lambda a, b: leaky_relu(a),
    "softmax": lambda a, b: softmax(a, axis=-1),
    "sub": sub,
    "hadamard": hadamard,
    "concat": lambda a, b: concat([a, b], axis=0),
    "gather_rows": lambda a, b: gather_rows(a, [2, 0, 2]),
}


@pytest.mark.parametrize("name", sorted(_OPERATIONS))
def test_operation_gradient_matches_finite_differences(finite_difference, name):
    operation = _OPERATIONS[name]
    rng = np.random.default_rng(11)
    with use_precision(np.float64):
        # lejos de 0 para no cruzar el quiebre de leaky_relu
        a = leaf(rng.uniform(0.2, 2.0, (3, 4)) * rng.choice([-1.0, 1.0], (3, 4)), "a")
        b = leaf(rng.normal(size=(3, 4)), "b")
        weights = constant(rng.normal(size=operation(a, b).shape))
        with Tape() as tape:
            root = reduce_sum(hadamard(operation(a, b), weights))
        grads = tape.backward(root, {"a": a, "b": b})

        def loss():
            return reduce_sum(hadamard(operation(a, b), weights)).item()

        for tensor in (a, b):
            numeric = finite_difference(loss, tensor.data, range(tensor.size))
            np.testing.assert_allclose(numeric, grads[tensor.name].reshape(-1), rtol=1e-5, atol=1e-8,
                                       err_msg=f"{name}/{tensor.name}")


# =============================================================================
# Softmax
# =============================================================================

def test_softmax_symmetric():
    np.testing.assert_allclose(softmax(constant([0.0, 0.0])).numpy(), [0.5, 0.5])


@pytest.mark.parametrize("value", [-40.0, 0.0, 3.5, 1e4])
def test_softmax_single_element_is_one(value):
    assert softmax(constant([value])).item() == pytest.approx(1.0)


def test_softmax_reference_values():
    with use_precision(np.float64):
        out = softmax(constant([1.0, 2.0, 3.0])).numpy()
    np.testing.assert_allclose(out, [0.09003, 0.24473, 0.66524], atol=1e-5)


def test_softmax_rows_sum_to_one_in_batch():
    rng = np.random.default_rng(3)
    out = softmax(constant(rng.normal(size=(6, 4)) * 20), axis=-1).numpy()
    np.testing.assert_allclose(out.sum(axis=-1), np.ones(6), rtol=1e-6)


def test_softmax_is_stable_for_large_magnitudes():
    out = softmax(constant([1e4, -1e4, 0.0, 1e4])).numpy()
    assert np.all(np.isfinite(out))
    assert out.sum() == pytest.approx(1.0, rel=1e-6)
    np.testing.assert_allclose(out, [0.5, 0.0, 0.0, 0.5], atol=1e-6)


# =============================================================================
# Cinta
# =============================================================================

def test_backward_of_square():
    with use_precision(np.float64):
        x = leaf([3.0])
        with Tape() as tape:
            root = reduce_sum(hadamard(x, x))
        grads = tape.backward(root, {"x": x})
    np.testing.assert_array_equal(grads["x"], [6.0])


def test_unreachable_parameter_gets_zero_gradient():
    x = leaf([1.0, 2.0], "x")
    p = leaf([[5.0, 6.0]], "p")
    with Tape() as tape:
        root = reduce_sum(hadamard(x, x))
    grads = tape.backward(root, {"x": x, "p": p})
    np.testing.assert_array_equal(grads["p"], np.zeros((1, 2)))


def test_shared_input_accumulates_gradient():
    with use_precision(np.float64):
        x = leaf([2.0])
        with Tape() as tape:
            root = reduce_sum(add(hadamard(x, x), x))
        grads = tape.backward(root, {"x": x})
    np.testing.assert_array_equal(grads["x"], [5.0])


def test_tape_cannot_be_replayed():
    x = leaf([1.0])
    with Tape() as tape:
        root = reduce_sum(tanh(x))
    tape.backward(root, {"x": x})
    assert tape.consumed
    with pytest.raises(ContractError):
        tape.backward(root, {"x": x})


def test_backward_requires_scalar_root():
    x = leaf([1.0, 2.0])
    with Tape() as tape:
        out = tanh(x)
    with pytest.raises(ContractError):
        tape.backward(out, {"x": x})


def test_operations_outside_a_tape_are_not_recorded():
    x = leaf([1.0])
    tanh(x)
    with Tape() as tape:
        pass
    assert len(tape) == 0


def test_gather_rows_scatters_gradient():
    table = leaf(np.arange(12.0).reshape(4, 3), "table")
    with Tape() as tape:
        root = reduce_sum(gather_rows(table, [3, 1, 3]))
    grads = tape.backward(root, {"table": table})
    expected = np.zeros((4, 3))
    expected[1] = 1.0
    expected[3] = 2.0
    np.testing.assert_array_equal(grads["table"], expected)


def test_concat_splits_gradient():
    with use_precision(np.float64):
        a, b = leaf([[1.0]], "a"), leaf([[2.0, 3.0]], "b")
        weights = constant([[1.0, 10.0, 100.0]])
        with Tape() as tape:
            root = reduce_sum(hadamard(concat([a, b], axis=-1), weights))
        grads = tape.backward(root, {"a": a, "b": b})
    np.testing.assert_array_equal(grads["a"], [[1.0]])
    np.testing.assert_array_equal(grads["b"], [[10.0, 100.0]])


def test_tensor_rejects_empty_extent():
    with pytest.raises(DimensionError):
        Tensor(np.zeros((0, 3)))


def test_precision_context():
    assert constant([1.0]).dtype == np.float32
    with use_precision(np.float64):
        assert constant([1.0]).dtype == np.float64
    assert constant([1.0]).dtype == np.float32


# =============================================================================
# Generador e inicialización
# =============================================================================

def test_kaiming_bound_for_fan_in_six():
    assert kaiming_bound(6) == pytest.approx(1.0)
    samples = kaiming_uniform(6, (50, 6), Rng(1)).numpy()
    assert samples.min() >= -1.0 and samples.max() <= 1.0


def test_kaiming_variance():
    fan_in = 8
    samples = kaiming_uniform(fan_in, (100_000,), Rng(2), dtype=np.float64).numpy()
    assert samples.var() == pytest.approx(2.0 / fan_in, rel=0.05)


def test_kaiming_rejects_zero_fan_in():
    with pytest.raises(DomainError):
        kaiming_uniform(0, (1, 1), Rng(0))


def test_same_seed_same_sequence():
    first, second = Rng(42), Rng(42)
    np.testing.assert_array_equal(first.uniform(-1, 1, (10,)), second.uniform(-1, 1, (10,)))
    np.testing.assert_array_equal(first.permutation(20), second.permutation(20))
    assert not np.array_equal(Rng(1).uniform(0, 1, (5,)), Rng(2).uniform(0, 1, (5,)))
