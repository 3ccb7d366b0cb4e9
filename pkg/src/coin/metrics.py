"""S_Dbw cluster validity (scattering + inter-cluster density) and top-1 accuracy.

Clusters are given by the ground-truth labels. Lower S_Dbw means tighter,
better separated classes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diffcore import as_batch
from .errors import DegenerateDataError, DimensionError, MetricUndefinedError


@dataclass(frozen=True)
class SDbwResult:
    scat: float
    dens_bw: float
    score: float


def _density(points: np.ndarray, center: np.ndarray, radius: float) -> int:
    d2 = np.sum((points - center) ** 2, axis=1)
    # boundary counts as inside
    return int(np.count_nonzero(np.sqrt(d2) <= radius))


def s_dbw(features, labels) -> SDbwResult:
    """S_Dbw of ``features`` with ``labels`` as the cluster assignment.

    Variances use the population convention. The density radius is the
    average cluster standard deviation; when it is zero the density term is
    defined as zero. A pair whose two centers both have empty neighbourhoods
    is compared against a count of one rather than divided by zero.
    """
    X = as_batch(features, "features")
    labels = np.asarray(labels)
    if labels.shape != (X.shape[0],):
        raise DimensionError(f"labels must have shape ({X.shape[0]},), got {labels.shape}")
    classes = np.unique(labels)
    c = classes.size
    if c < 2:
        raise MetricUndefinedError("S_Dbw needs at least two distinct labels")

    # canonical row order so the result does not depend on input order, bit for bit
    order = np.lexsort(np.column_stack([X, labels]).T[::-1])
    X, labels = X[order], labels[order]

    sigma_all = np.linalg.norm(X.var(axis=0))
    if sigma_all == 0.0:
        raise DegenerateDataError("all points are identical; dataset variance is zero")

    members = [X[labels == k] for k in classes]
    centers = [m.mean(axis=0) for m in members]
    sigma_norms = np.array([np.linalg.norm(m.var(axis=0)) for m in members])

    scat = float(sigma_norms.sum() / c / sigma_all)
    stdev = float(np.sqrt(sigma_norms.sum()) / c)

    if stdev == 0.0:
        dens_bw = 0.0
    else:
        total = 0.0
        for i in range(c):
            for j in range(c):
                if i == j:
                    continue
                union = np.vstack([members[i], members[j]])
                mid = 0.5 * (centers[i] + centers[j])
                d_i = _density(union, centers[i], stdev)
                d_j = _density(union, centers[j], stdev)
                total += _density(union, mid, stdev) / max(d_i, d_j, 1)
        dens_bw = float(total / (c * (c - 1)))
    return SDbwResult(scat=scat, dens_bw=dens_bw, score=scat + dens_bw)


def top1_accuracy(logits, labels) -> float:
    """Fraction of rows whose argmax matches the label (ties go to the lower index)."""
    logits = np.asarray(logits, dtype=np.float64)
    labels = np.asarray(labels)
    if logits.ndim != 2 or logits.shape[0] < 1 or labels.shape != (logits.shape[0],):
        raise DimensionError(f"bad shapes: logits {logits.shape}, labels {labels.shape}")
    return float(np.mean(np.argmax(logits, axis=1) == labels))
