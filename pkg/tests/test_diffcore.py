import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from coin.diffcore import (
    L2Normalize,
    Linear,
    ReLU,
    backward_chain,
    finite_diff_grad,
    forward_chain,
    l2_normalize_rows,
    linear_forward,
    max_relative_error,
    relu,
    relu_backward,
)
from coin.errors import DegenerateEmbeddingError, DimensionError, NumericError


def loop_matmul(X, W, b):
    n, k = X.shape
    m = W.shape[1]
    out = np.zeros((n, m))
    for i in range(n):
        for j in range(m):
            acc = b[j]
            for t in range(k):
                acc += X[i, t] * W[t, j]
            out[i, j] = acc
    return out


finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


class TestLinear:
    def test_identity(self):
        np.testing.assert_array_equal(linear_forward([[1.0, 2.0]], np.eye(2), [0, 0]), [[1, 2]])

    def test_diagonal(self):
        out = linear_forward([[1, 0], [0, 1]], [[2, 0], [0, 3]], [1, 1])
        np.testing.assert_array_equal(out, [[3, 1], [1, 4]])

    def test_matches_loop_oracle(self):
        rng = np.random.default_rng(3)
        X, W, b = rng.normal(size=(3, 4)), rng.normal(size=(4, 2)), rng.normal(size=2)
        np.testing.assert_allclose(linear_forward(X, W, b), loop_matmul(X, W, b), rtol=0, atol=1e-12)

    @pytest.mark.parametrize("W_shape,b_shape", [((3, 2), (2,)), ((2, 2), (3,))])
    def test_shape_mismatch(self, W_shape, b_shape):
        with pytest.raises(DimensionError):
            linear_forward(np.ones((1, 2)), np.ones(W_shape), np.ones(b_shape))

    @given(a=st.floats(-2, 2), b=st.floats(-2, 2), seed=st.integers(0, 2**32 - 1))
    def test_linearity_without_bias(self, a, b, seed):
        rng = np.random.default_rng(seed)
        X, Y, W = rng.normal(size=(4, 3)), rng.normal(size=(4, 3)), rng.normal(size=(3, 5))
        zero = np.zeros(5)
        lhs = linear_forward(a * X + b * Y, W, zero)
        rhs = a * linear_forward(X, W, zero) + b * linear_forward(Y, W, zero)
        np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-12)


class TestRelu:
    def test_sign(self):
        np.testing.assert_array_equal(relu([[-1.0, 2.0]]), [[0, 2]])

    def test_zero_has_zero_subgradient(self):
        X = np.array([[0.0]])
        np.testing.assert_array_equal(relu(X), [[0.0]])
        np.testing.assert_array_equal(relu_backward(X, np.ones((1, 1))), [[0.0]])

    @given(arrays(np.float64, (4, 5), elements=finite))
    def test_abs_identity(self, X):
        np.testing.assert_array_equal(relu(X) + relu(-X), np.abs(X))


class TestNormalize:
    def test_axis(self):
        np.testing.assert_array_equal(l2_normalize_rows([[2.0, 0.0]]), [[1.0, 0.0]])

    def test_345(self):
        np.testing.assert_allclose(l2_normalize_rows([[3.0, 4.0]]), [[0.6, 0.8]], atol=1e-15)

    def test_unit_rows(self):
        Y = l2_normalize_rows(np.random.default_rng(0).normal(size=(5, 8)))
        norms = np.array([np.sqrt(sum(v * v for v in row)) for row in Y])
        np.testing.assert_allclose(norms, 1.0, atol=1e-12)

    def test_degenerate_row(self):
        with pytest.raises(DegenerateEmbeddingError):
            l2_normalize_rows([[1.0, 0.0], [0.0, 1e-13]])

    @given(arrays(np.float64, (3, 4), elements=st.floats(0.1, 10)))
    def test_idempotent(self, X):
        once = l2_normalize_rows(X)
        np.testing.assert_allclose(l2_normalize_rows(once), once, rtol=0, atol=1e-12)


class TestFiniteDiff:
    def test_quadratic(self):
        g = finite_diff_grad(lambda x: float(x[0, 0] ** 2), np.array([[3.0]]), 1e-5)
        assert abs(g[0, 0] - 6.0) < 1e-8

    def test_constant(self):
        np.testing.assert_array_equal(finite_diff_grad(lambda x: 4.2, np.ones((2, 3))), np.zeros((2, 3)))

    def test_non_finite_raises(self):
        with pytest.raises(NumericError):
            finite_diff_grad(lambda x: float("nan"), np.ones((1, 1)))

    def test_does_not_mutate_input(self):
        X = np.arange(4.0).reshape(2, 2)
        finite_diff_grad(lambda x: float(np.sum(x ** 3)), X)
        np.testing.assert_array_equal(X, np.arange(4.0).reshape(2, 2))


def _mlp(rng, widths, normalize=False):
    layers = []
    for i, (a, b) in enumerate(zip(widths[:-1], widths[1:])):
        if i:
            layers.append(ReLU())
        layers.append(Linear(rng.normal(size=(a, b)) / np.sqrt(a), rng.normal(size=b) * 0.1))
    if normalize:
        layers.append(L2Normalize())
    return layers


class TestBackwardChain:
    def test_sum_loss_bias_grad_is_ones(self):
        rng = np.random.default_rng(0)
        layer = Linear(rng.normal(size=(3, 4)), np.zeros(4))
        X = rng.normal(size=(5, 3))
        (gW_gb,), gX = backward_chain([layer], X, np.ones((5, 4)))
        np.testing.assert_array_equal(gW_gb[1], np.full(4, 5.0))
        np.testing.assert_allclose(gW_gb[0], X.T @ np.ones((5, 4)), atol=1e-14)

    def test_bias_grad_single_row(self):
        layer = Linear(np.eye(2), np.zeros(2))
        (g,), _ = backward_chain([layer], np.array([[1.0, 2.0]]), np.ones((1, 2)))
        np.testing.assert_array_equal(g[1], [1.0, 1.0])

    def test_upstream_shape_checked(self):
        layer = Linear(np.eye(2), np.zeros(2))
        with pytest.raises(DimensionError):
            backward_chain([layer], np.ones((3, 2)), np.ones((3, 3)))

    @pytest.mark.parametrize("seed", range(20))
    @pytest.mark.parametrize("normalize", [False, True])
    def test_two_layer_mlp_matches_finite_differences(self, seed, normalize):
        rng = np.random.default_rng(seed)
        layers = _mlp(rng, [4, 6, 3], normalize)
        X = rng.normal(size=(5, 4))
        C = rng.normal(size=(5, 3))

        def loss_of_input(x):
            return float(np.sum(forward_chain(layers, x)[0] * C))

        param_grads, gX = backward_chain(layers, X, C)
        assert max_relative_error(gX, finite_diff_grad(loss_of_input, X)) <= 1e-5

        for li, layer in enumerate(layers):
            if not isinstance(layer, Linear):
                continue
            for pi, name in enumerate(("W", "b")):
                base = getattr(layer, name)

                def loss_of_param(p, layer=layer, name=name):
                    old = getattr(layer, name)
                    setattr(layer, name, p if name == "W" else p[0])
                    try:
                        return loss_of_input(X)
                    finally:
                        setattr(layer, name, old)

                arg = base if name == "W" else base[None, :]
                num = finite_diff_grad(loss_of_param, arg)
                ana = param_grads[li][pi] if name == "W" else param_grads[li][pi][None, :]
                assert max_relative_error(ana, num) <= 1e-5, (li, name)


@settings(max_examples=25)
@given(st.integers(0, 10_000))
def test_relative_error_symmetric(seed):
    rng = np.random.default_rng(seed)
    a, b = rng.normal(size=5), rng.normal(size=5)
    assert max_relative_error(a, b) == max_relative_error(b, a)
