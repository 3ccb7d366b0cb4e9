"""Synthetic labeled blobs, vector augmentations and stratified splits."""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParameterError, SplitError


@dataclass
class Dataset:
    features: np.ndarray
    labels: np.ndarray
    num_classes: int

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.features.ndim != 2 or self.labels.shape != (self.features.shape[0],):
            raise DimensionError(
                f"features {self.features.shape} and labels {self.labels.shape} do not line up"
            )
        if self.labels.size and (self.labels.min() < 0 or self.labels.max() >= self.num_classes):
            raise ParameterError(f"labels must lie in [0, {self.num_classes})")
        if not np.all(np.isfinite(self.features)):
            raise ParameterError("features must be finite")

    def __len__(self):
        return self.labels.shape[0]

    @property
    def dims(self) -> int:
        return self.features.shape[1]

    def subset(self, idx) -> "Dataset":
        return Dataset(self.features[idx], self.labels[idx], self.num_classes)


@dataclass(frozen=True)
class AugmentConfig:
    noise_sigma: float = 0.1
    scale_range: tuple[float, float] = (0.8, 1.2)
    dropout_p: float = 0.1

    def __post_init__(self):
        lo, hi = self.scale_range
        if self.noise_sigma < 0:
            raise ParameterError("noise_sigma must be >= 0")
        if not 0 < lo <= hi:
            raise ParameterError(f"scale_range must satisfy 0 < lo <= hi, got {self.scale_range}")
        if not 0 <= self.dropout_p < 1:
            raise ParameterError(f"dropout_p must be in [0, 1), got {self.dropout_p}")


def make_blobs(K: int, d: int, per_class: int, center_scale: float, spread: float,
               rng: np.random.Generator) -> Dataset:
    """Gaussian blobs around centers drawn uniformly from [-center_scale, center_scale]^d.

    Draws all K centers first, then the points class by class; rows are
    ordered by class.
    """
    if K < 2 or per_class < 1 or spread <= 0 or d < 1:
        raise ParameterError("need K >= 2, d >= 1, per_class >= 1 and spread > 0")
    centers = rng.uniform(-center_scale, center_scale, size=(K, d))
    feats = [centers[k] + spread * rng.standard_normal((per_class, d)) for k in range(K)]
    labels = np.repeat(np.arange(K), per_class)
    return Dataset(np.vstack(feats), labels, K)


def augment(x, cfg: AugmentConfig, rng: np.random.Generator) -> np.ndarray:
    """Random view of a feature row: mask * (s * x + noise).

    Accepts a single row or a matrix of rows. Draw order: one scale per row,
    then the Gaussian noise, then the keep-mask.
    """
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    X = x[None, :] if single else x
    n, d = X.shape
    lo, hi = cfg.scale_range
    s = rng.uniform(lo, hi, size=n)
    noise = rng.standard_normal((n, d)) * cfg.noise_sigma
    keep = rng.random((n, d)) >= cfg.dropout_p
    out = (s[:, None] * X + noise) * keep
    return out[0] if single else out


def _test_counts(sizes: np.ndarray, test_fraction: float) -> np.ndarray:
    """Largest-remainder allocation: round(f * n) test rows in total, each class
    within one of f * size. Ties in the remainder go to the lower class id."""
    exact = test_fraction * sizes
    counts = np.floor(exact).astype(np.int64)
    extra = int(np.floor(test_fraction * sizes.sum() + 0.5)) - int(counts.sum())
    if extra > 0:
        order = np.lexsort((np.arange(sizes.size), -(exact - counts)))
        counts[order[:extra]] += 1
    return counts


def split_indices(ds: Dataset, test_fraction: float, rng: np.random.Generator):
    """Stratified split of row indices; returns sorted (train_idx, test_idx).

    Test rows of each class are chosen by one permutation per class, drawn in
    class order.
    """
    if not 0 < test_fraction < 1:
        raise SplitError(f"test_fraction must be in (0, 1), got {test_fraction}")
    present = [k for k in range(ds.num_classes) if np.any(ds.labels == k)]
    members = [np.flatnonzero(ds.labels == k) for k in present]
    counts = _test_counts(np.array([m.size for m in members]), test_fraction)
    train_idx, test_idx = [], []
    for k, idx, n_test in zip(present, members, counts):
        if n_test == 0 or n_test == idx.size:
            raise SplitError(
                f"class {k} with {idx.size} instance(s) cannot be split at fraction {test_fraction}"
            )
        idx = idx[rng.permutation(idx.size)]
        test_idx.append(idx[:n_test])
        train_idx.append(idx[n_test:])
    return np.sort(np.concatenate(train_idx)), np.sort(np.concatenate(test_idx))


def train_test_split(ds: Dataset, test_fraction: float, rng: np.random.Generator):
    train_idx, test_idx = split_indices(ds, test_fraction, rng)
    return ds.subset(train_idx), ds.subset(test_idx)


def write_csv(ds: Dataset, path) -> None:
    """Header f0..f{d-1},label; floats with 17 significant digits."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"f{j}" for j in range(ds.dims)] + ["label"])
        for row, lab in zip(ds.features, ds.labels):
            w.writerow([format(v, ".17g") for v in row] + [int(lab)])


def read_csv(path, num_classes: int | None = None) -> Dataset:
    feats, labels = [], []
    with open(path, newline="", encoding="utf-8") as fh:
        rows = (line for line in fh if not line.startswith("#"))
        reader = csv.reader(rows)
        header = next(reader)
        if not header or header[-1] != "label":
            raise ParameterError(f"{path}: last header column must be 'label'")
        for r in reader:
            if not r:
                continue
            feats.append([float(t) for t in r[:-1]])
            labels.append(int(r[-1]))
    labels = np.asarray(labels, dtype=np.int64)
    k = num_classes if num_classes is not None else int(labels.max()) + 1
    return Dataset(np.asarray(feats, dtype=np.float64).reshape(len(labels), len(header) - 1), labels, k)
