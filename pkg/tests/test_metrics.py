import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coin.errors import DegenerateDataError, MetricUndefinedError
from coin.metrics import s_dbw, top1_accuracy

from oracles import s_dbw_reference

SIX_POINTS = np.array([[0, 0], [0, 2], [2, 0], [10, 10], [10, 12], [12, 10]], dtype=float)
SIX_LABELS = np.array([0, 0, 0, 1, 1, 1])


def test_six_point_golden():
    # per-class variance vector (8/9, 8/9), pooled (233/9, 233/9): Scat = 8/233.
    # stdev = (2/3) * 2**0.25 ~ 0.793 is below every point-to-center distance
    # (min sqrt(8)/3 ~ 0.943), so every density is 0 and Dens_bw = 0.
    res = s_dbw(SIX_POINTS, SIX_LABELS)
    assert res.scat == pytest.approx(8 / 233, abs=1e-9)
    assert res.dens_bw == 0.0
    assert res.score == pytest.approx(8 / 233, abs=1e-9)
    ref_scat, ref_dens = s_dbw_reference(SIX_POINTS, SIX_LABELS)
    assert res.scat == pytest.approx(ref_scat, abs=1e-12)
    assert res.dens_bw == pytest.approx(ref_dens, abs=1e-12)


def test_point_clusters_score_zero():
    X = np.array([[1.0, 1.0]] * 3 + [[5.0, -2.0]] * 4)
    res = s_dbw(X, [0, 0, 0, 1, 1, 1, 1])
    assert (res.scat, res.dens_bw, res.score) == (0.0, 0.0, 0.0)


def test_overlapping_pair_has_density():
    # two classes drawn from the same blob: midpoint is as dense as the centers
    rng = np.random.default_rng(0)
    X = rng.normal(size=(200, 2))
    res = s_dbw(X, np.arange(200) % 2)
    assert res.dens_bw > 0.9


def test_boundary_point_counts_inside():
    # each class has variance vector (2, 0), so stdev = sqrt(2 + 2) / 2 = 1 exactly;
    # the (0, 1) points sit exactly at distance 1 from the class-0 center
    X = np.array([[-2, 0], [0, 0], [0, 0], [2, 0], [-2, 1], [0, 1], [0, 1], [2, 1]], dtype=float)
    labels = [0, 0, 0, 0, 1, 1, 1, 1]
    res = s_dbw(X, labels)
    # inclusive: 4 points near each center and 4 near the midpoint -> ratio 1
    assert res.dens_bw == 1.0
    assert res.scat == pytest.approx(2.0 / np.sqrt(4.0625), abs=1e-12)


def test_shrinking_clusters_lowers_scat():
    rng = np.random.default_rng(1)
    centers = np.array([[0.0, 0.0, 0.0], [4.0, 0.0, 1.0], [0.0, 5.0, -2.0]])
    labels = np.repeat(np.arange(3), 20)
    X = centers[labels] + rng.normal(size=(60, 3))
    means = np.array([X[labels == k].mean(axis=0) for k in range(3)])
    shrunk = means[labels] + 0.5 * (X - means[labels])
    assert s_dbw(shrunk, labels).scat < s_dbw(X, labels).scat


def test_single_class_rejected():
    with pytest.raises(MetricUndefinedError):
        s_dbw(np.random.default_rng(0).normal(size=(4, 2)), [1, 1, 1, 1])


def test_identical_points_rejected():
    with pytest.raises(DegenerateDataError):
        s_dbw(np.ones((4, 2)), [0, 0, 1, 1])


def _clusters(seed, n_per=8, k=3, d=3):
    rng = np.random.default_rng(seed)
    labels = np.repeat(np.arange(k), n_per)
    X = rng.normal(size=(k, d))[labels] * 3 + rng.normal(size=(k * n_per, d))
    return X, labels


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_matches_reference(seed):
    X, labels = _clusters(seed)
    res = s_dbw(X, labels)
    ref = s_dbw_reference(X, labels)
    assert res.scat == pytest.approx(ref[0], abs=1e-9)
    assert res.dens_bw == pytest.approx(ref[1], abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 2**32 - 1))
def test_permutation_invariant(seed, pseed):
    X, labels = _clusters(seed)
    perm = np.random.default_rng(pseed).permutation(len(labels))
    assert s_dbw(X[perm], labels[perm]) == s_dbw(X, labels)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 2**32 - 1))
def test_translation_invariant(seed, tseed):
    X, labels = _clusters(seed)
    shift = np.random.default_rng(tseed).uniform(-50, 50, size=X.shape[1])
    a, b = s_dbw(X, labels), s_dbw(X + shift, labels)
    assert a.scat == pytest.approx(b.scat, abs=1e-9)
    assert a.dens_bw == pytest.approx(b.dens_bw, abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_score_is_sum(seed):
    res = s_dbw(*_clusters(seed))
    assert res.score == res.scat + res.dens_bw
    assert res.scat >= 0 and res.dens_bw >= 0


class TestAccuracy:
    def test_one_hot_labels(self):
        labels = np.array([0, 2, 1, 2])
        assert top1_accuracy(np.eye(3)[labels], labels) == 1.0

    def test_shifted_one_hot(self):
        labels = np.array([0, 2, 1, 2])
        assert top1_accuracy(np.eye(3)[(labels + 1) % 3], labels) == 0.0

    def test_ties_go_low(self):
        assert top1_accuracy(np.zeros((2, 3)), [0, 1]) == 0.5

    def test_counting_oracle(self):
        rng = np.random.default_rng(2)
        logits, labels = rng.normal(size=(100, 5)), rng.integers(0, 5, size=100)
        hits = 0
        for row, lab in zip(logits.tolist(), labels.tolist()):
            best = 0
            for j in range(1, 5):
                if row[j] > row[best]:
                    best = j
            hits += best == lab
        assert top1_accuracy(logits, labels) == hits / 100

    @settings(max_examples=50)
    @given(st.integers(0, 2**32 - 1))
    def test_monotone_transform_invariant(self, seed):
        rng = np.random.default_rng(seed)
        logits, labels = rng.normal(size=(20, 4)), rng.integers(0, 4, size=20)
        scale = rng.uniform(0.1, 3.0, size=(20, 1))
        shift = rng.normal(size=(20, 1))
        assert top1_accuracy(np.exp(logits) * scale + shift, labels) == top1_accuracy(logits, labels)
