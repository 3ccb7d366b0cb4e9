"""Supervised contrastive loss, cross-entropy, and their weighted sum.

Each loss returns its value together with the analytic gradient with respect
to its direct input (the unit-norm features v, or the logits).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BatchSizeError, DimensionError, ParameterError

DEFAULT_TAU = 0.3
DEFAULT_LAMBDA = 0.1


@dataclass
class LossResult:
    value: float
    grad_input: np.ndarray


def _labels(labels, n):
    labels = np.asarray(labels)
    if labels.shape != (n,):
        raise DimensionError(f"labels must have shape ({n},), got {labels.shape}")
    return labels


def sup_con_loss(v, labels, tau: float = DEFAULT_TAU) -> LossResult:
    """Supervised contrastive loss over one batch of unit-norm rows.

    For anchor i the candidates are every other row of the batch and the
    positives are the candidates sharing its label. Anchors without any
    positive are skipped, and the mean runs over the remaining anchors
    (zero if none remain). The gradient is with respect to ``v``.
    """
    if tau <= 0:
        raise ParameterError(f"tau must be > 0, got {tau}")
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 2:
        raise DimensionError(f"v must be 2-D, got shape {v.shape}")
    n = v.shape[0]
    if n < 2:
        raise BatchSizeError(f"sup_con_loss needs at least 2 instances, got {n}")
    labels = _labels(labels, n)

    # canonical row order (by feature values, so relabeling cannot change it):
    # the value is then bit-identical under any permutation of the batch
    order = np.lexsort(v.T)
    v, labels = v[order], labels[order]

    sim = (v @ v.T) / tau
    off_diag = ~np.eye(n, dtype=bool)
    pos = (labels[:, None] == labels[None, :]) & off_diag
    n_pos = pos.sum(axis=1)
    anchors = n_pos > 0
    n_anchors = int(anchors.sum())
    if n_anchors == 0:
        return LossResult(0.0, np.zeros_like(v))

    masked = np.where(off_diag, sim, -np.inf)
    row_max = masked.max(axis=1, keepdims=True)
    expd = np.exp(masked - row_max)
    denom = expd.sum(axis=1, keepdims=True)
    log_denom = np.log(denom) + row_max  # log sum_{k != i} exp(s_ik)
    prob = expd / denom

    safe_pos = np.maximum(n_pos, 1)
    mean_pos_sim = np.where(pos, sim, 0.0).sum(axis=1) / safe_pos
    per_anchor = log_denom[:, 0] - mean_pos_sim
    value = float(per_anchor[anchors].sum() / n_anchors)

    # dL/ds_ik = (p_ik - [k in P_i]/|P_i|) / M for anchors i with positives
    G = (prob - pos / safe_pos[:, None]) * anchors[:, None] / n_anchors
    grad_sorted = (G @ v + G.T @ v) / tau
    grad = np.empty_like(grad_sorted)
    grad[order] = grad_sorted
    return LossResult(value, grad)


def cross_entropy(logits, labels) -> LossResult:
    """Mean softmax cross-entropy; gradient is (softmax - onehot) / n."""
    logits = np.asarray(logits, dtype=np.float64)
    if logits.ndim != 2:
        raise DimensionError(f"logits must be 2-D, got shape {logits.shape}")
    n, K = logits.shape
    if K < 2:
        raise ParameterError(f"need at least 2 classes, got {K}")
    labels = _labels(labels, n)
    if labels.size and (labels.min() < 0 or labels.max() >= K):
        raise ParameterError(f"labels must lie in [0, {K}), got range [{labels.min()}, {labels.max()}]")
    shifted = logits - logits.max(axis=1, keepdims=True)
    log_z = np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    log_p = shifted - log_z
    rows = np.arange(n)
    value = float(-log_p[rows, labels].mean())
    grad = np.exp(log_p)
    grad[rows, labels] -= 1.0
    return LossResult(value, grad / n)


@dataclass
class CombinedResult:
    value: float
    grad_logits: np.ndarray
    grad_v: np.ndarray
    ce: float
    con: float


def combined_loss(v, logits, labels, tau: float = DEFAULT_TAU,
                  lam: float = DEFAULT_LAMBDA) -> CombinedResult:
    """Cross-entropy on the logits plus ``lam`` times the contrastive loss on v."""
    if lam < 0:
        raise ParameterError(f"lambda must be >= 0, got {lam}")
    ce = cross_entropy(logits, labels)
    if lam == 0:
        v = np.asarray(v, dtype=np.float64)
        return CombinedResult(ce.value, ce.grad_input, np.zeros_like(v), ce.value, 0.0)
    con = sup_con_loss(v, labels, tau)
    return CombinedResult(
        value=ce.value + lam * con.value,
        grad_logits=ce.grad_input,
        grad_v=lam * con.grad_input,
        ce=ce.value,
        con=con.value,
    )


def softmax(logits) -> np.ndarray:
    logits = np.asarray(logits, dtype=np.float64)
    e = np.exp(logits - logits.max(axis=1, keepdims=True))
    return e / e.sum(axis=1, keepdims=True)
