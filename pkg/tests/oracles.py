"""Slow, literal re-implementations used as independent references in tests."""
import math

import numpy as np

from coin.diffcore import finite_diff_grad, max_relative_error


def supcon_bruteforce(v, labels, tau):
    """Triple loop over anchors, positives and candidates, straight from the formula."""
    n = len(labels)
    total, anchors = 0.0, 0
    for i in range(n):
        positives = [j for j in range(n) if j != i and labels[j] == labels[i]]
        if not positives:
            continue
        anchors += 1
        acc = 0.0
        for j in positives:
            num = math.exp(sum(v[i][t] * v[j][t] for t in range(len(v[i]))) / tau)
            den = 0.0
            for k in range(n):
                if k != i:
                    den += math.exp(sum(v[i][t] * v[k][t] for t in range(len(v[i]))) / tau)
            acc += math.log(num / den)
        total += -acc / len(positives)
    return total / anchors if anchors else 0.0


def cross_entropy_naive(logits, labels):
    n = len(labels)
    total = 0.0
    for i in range(n):
        den = sum(math.exp(x) for x in logits[i])
        total += -math.log(math.exp(logits[i][labels[i]]) / den)
    return total / n


def s_dbw_reference(points, labels):
    """Plain-Python S_Dbw (population variances, inclusive radius)."""
    points = [list(map(float, p)) for p in points]
    d = len(points[0])
    classes = sorted(set(labels))
    c = len(classes)

    def mean(ps):
        return [sum(p[t] for p in ps) / len(ps) for t in range(d)]

    def var_norm(ps):
        m = mean(ps)
        var = [sum((p[t] - m[t]) ** 2 for p in ps) / len(ps) for t in range(d)]
        return math.sqrt(sum(x * x for x in var))

    def dist(a, b):
        return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))

    members = {k: [p for p, l in zip(points, labels) if l == k] for k in classes}
    sig_all = var_norm(points)
    sig = {k: var_norm(members[k]) for k in classes}
    scat = sum(sig.values()) / c / sig_all
    stdev = math.sqrt(sum(sig.values())) / c
    if stdev == 0:
        return scat, 0.0
    centers = {k: mean(members[k]) for k in classes}
    total = 0.0
    for a in classes:
        for b in classes:
            if a == b:
                continue
            union = members[a] + members[b]
            mid = [(x + y) / 2 for x, y in zip(centers[a], centers[b])]

            def dens(u):
                return sum(1 for p in union if dist(p, u) <= stdev)

            total += dens(mid) / max(dens(centers[a]), dens(centers[b]), 1)
    return scat, total / (c * (c - 1))


def random_unit_rows(rng, n, d):
    v = rng.normal(size=(n, d))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def check_param_grads(params, loss_fn, grads, groups=("w_f", "w_g", "w_h"), floor=1e-8):
    """Compare analytic grads of every array against central differences."""
    worst = 0.0
    for gname in groups:
        layers = params.groups()[gname]
        for li, (W, b) in enumerate(layers):
            for pi, arr in enumerate((W, b)):
                def f(x, arr=arr):
                    saved = arr.copy()
                    arr[...] = x.reshape(arr.shape)
                    try:
                        return loss_fn()
                    finally:
                        arr[...] = saved

                num = finite_diff_grad(f, arr.reshape(1, -1) if arr.ndim == 1 else arr)
                ana = grads[gname][li][pi]
                worst = max(worst, max_relative_error(ana.reshape(num.shape), num, floor))
    return worst
