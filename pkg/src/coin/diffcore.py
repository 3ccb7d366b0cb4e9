"""Small differentiable building blocks with hand-written backward passes.

Everything operates on float64 numpy arrays. A model is a straight-line list of
layers, so reverse mode is a loop over cached forward inputs; there is no tape.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateEmbeddingError, DimensionError, NumericError

EPS_NORM = 1e-12


def as_batch(X, name: str = "X") -> np.ndarray:
    """Validate a feature batch: 2-D, non-empty, finite, float64."""
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NumericError(f"{name} contains non-finite entries")
    return arr


def linear_forward(X, W, b) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    W = np.asarray(W, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if X.ndim != 2 or W.ndim != 2 or b.ndim != 1:
        raise DimensionError(f"expected X 2-D, W 2-D, b 1-D; got {X.shape}, {W.shape}, {b.shape}")
    if X.shape[1] != W.shape[0] or W.shape[1] != b.shape[0]:
        raise DimensionError(f"shape mismatch: X {X.shape}, W {W.shape}, b {b.shape}")
    return X @ W + b


def linear_backward(X, W, grad_out):
    """Returns (grad_X, grad_W, grad_b)."""
    return grad_out @ W.T, X.T @ grad_out, grad_out.sum(axis=0)


def relu(X) -> np.ndarray:
    return np.maximum(np.asarray(X, dtype=np.float64), 0.0)


def relu_backward(X, grad_out) -> np.ndarray:
    # subgradient at exactly 0 is 0
    return np.where(X > 0.0, grad_out, 0.0)


def l2_normalize_rows(X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    norms = np.sqrt(np.einsum("ij,ij->i", X, X))
    bad = np.flatnonzero(norms < EPS_NORM)
    if bad.size:
        raise DegenerateEmbeddingError(
            f"{bad.size} row(s) have norm below {EPS_NORM:g} (first: row {bad[0]})"
        )
    return X / norms[:, None]


def l2_normalize_backward(X, grad_out) -> np.ndarray:
    norms = np.sqrt(np.einsum("ij,ij->i", X, X))[:, None]
    Y = X / norms
    radial = np.einsum("ij,ij->i", Y, grad_out)[:, None]
    return (grad_out - Y * radial) / norms


@dataclass
class Linear:
    W: np.ndarray
    b: np.ndarray

    def forward(self, X):
        return linear_forward(X, self.W, self.b)

    def backward(self, X, grad_out):
        gX, gW, gb = linear_backward(X, self.W, grad_out)
        return gX, (gW, gb)


class ReLU:
    def forward(self, X):
        return relu(X)

    def backward(self, X, grad_out):
        return relu_backward(X, grad_out), ()

    def __repr__(self):
        return "ReLU()"


class L2Normalize:
    def forward(self, X):
        return l2_normalize_rows(X)

    def backward(self, X, grad_out):
        return l2_normalize_backward(X, grad_out), ()

    def __repr__(self):
        return "L2Normalize()"


def forward_chain(layers: Sequence, X) -> tuple[np.ndarray, list[np.ndarray]]:
    """Run layers in order. Returns the output and the input seen by each layer."""
    inputs = []
    out = np.asarray(X, dtype=np.float64)
    for layer in layers:
        inputs.append(out)
        out = layer.forward(out)
    return out, inputs


def backward_chain(layers: Sequence, X, upstream_grad, inputs=None):
    """Reverse-mode pass over a straight-line layer sequence.

    ``upstream_grad`` is dL/d(output). Returns ``(param_grads, grad_X)`` where
    ``param_grads[i]`` is ``(gW, gb)`` for a Linear layer and ``()`` otherwise.
    Pass the ``inputs`` list from :func:`forward_chain` to skip recomputing the
    forward pass.
    """
    if inputs is None:
        out, inputs = forward_chain(layers, X)
    else:
        out = layers[-1].forward(inputs[-1]) if layers else np.asarray(X, dtype=np.float64)
    g = np.asarray(upstream_grad, dtype=np.float64)
    if g.shape != out.shape:
        raise DimensionError(f"upstream grad shape {g.shape} does not match output {out.shape}")
    param_grads: list = [()] * len(layers)
    for i in range(len(layers) - 1, -1, -1):
        g, param_grads[i] = layers[i].backward(inputs[i], g)
    return param_grads, g


def finite_diff_grad(f: Callable[[np.ndarray], float], X, eps: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of a scalar function of an array."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    X = np.array(X, dtype=np.float64)
    grad = np.zeros_like(X)
    flat = X.reshape(-1)
    gflat = grad.reshape(-1)
    for k in range(flat.size):
        orig = flat[k]
        flat[k] = orig + eps
        fp = float(f(X))
        flat[k] = orig - eps
        fm = float(f(X))
        flat[k] = orig
        if not (np.isfinite(fp) and np.isfinite(fm)):
            raise NumericError(f"function is non-finite near flat index {k}")
        gflat[k] = (fp - fm) / (2.0 * eps)
    return grad


def max_relative_error(a, b, floor: float = 1e-8) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    denom = np.maximum(np.maximum(np.abs(a), np.abs(b)), floor)
    return float(np.max(np.abs(a - b) / denom)) if a.size else 0.0
