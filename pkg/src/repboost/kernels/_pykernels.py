"""Pure numpy implementations of the hot kernels.

Accumulation order matches ``_ckernels.pyx`` exactly (per-point scatter in
input order, then sequential prefix/suffix sums), so float outputs agree bit
for bit between backends.
"""

import numpy as np


def vote_sum(X, feature, threshold, polarity, weight):
    """Integer vote total for every row of ``X``.

    Hypothesis ``j`` votes ``polarity[j]`` when ``X[:, feature[j]] > threshold[j]``
    and ``-polarity[j]`` otherwise; ``feature[j] < 0`` marks a constant vote.
    Each vote is multiplied by its integer multiplicity ``weight[j]``.
    """
    X = np.asarray(X, dtype=np.float64)
    out = np.zeros(X.shape[0], dtype=np.int64)
    for f, t, p, w in zip(feature.tolist(), threshold.tolist(),
                          polarity.tolist(), weight.tolist()):
        pw = p * w
        if f < 0:
            out += pw
        else:
            out += np.where(X[:, f] > t, pw, -pw)
    return out


def _bucket_tables(X, y, w, thresholds, dtype):
    m, d = X.shape
    K = thresholds.shape[1]
    out = np.empty((d, K, 2), dtype=dtype)
    pos_w = np.where(y > 0, w, 0).astype(dtype)
    neg_w = np.where(y < 0, w, 0).astype(dtype)
    for f in range(d):
        b = np.searchsorted(thresholds[f], X[:, f], side="left")
        if dtype is np.int64:
            pos = _int_bincount(b, pos_w, K + 1)
            neg = _int_bincount(b, neg_w, K + 1)
        else:
            pos = np.bincount(b, weights=pos_w, minlength=K + 1)
            neg = np.bincount(b, weights=neg_w, minlength=K + 1)
        pos_le = np.cumsum(pos)[:K]
        neg_le = np.cumsum(neg)[:K]
        # suffix sums over buckets strictly above k
        pos_gt = np.cumsum(pos[::-1])[::-1][1:]
        neg_gt = np.cumsum(neg[::-1])[::-1][1:]
        # polarity -1 predicts +1 on x <= t: wrong on negatives below, positives above
        out[f, :, 0] = neg_le + pos_gt
        out[f, :, 1] = pos_le + neg_gt
    return out


def _int_bincount(b, w, size):
    out = np.zeros(size, dtype=np.int64)
    np.add.at(out, b, w)
    return out


def stump_mistake_counts(X, y, thresholds):
    """Mistake counts of every grid stump, shape ``(d, K, 2)``.

    Axis 2 indexes polarity (-1, +1).  Exact integers.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    ones = np.ones(X.shape[0], dtype=np.int64)
    return _bucket_tables(X, y, ones, np.asarray(thresholds, dtype=np.float64), np.int64)


def stump_weighted_errors(X, y, w, thresholds):
    """Weighted error of every grid stump, shape ``(d, K, 2)``."""
    X = np.asarray(X, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    return _bucket_tables(X, np.asarray(y), w,
                          np.asarray(thresholds, dtype=np.float64), np.float64)


def accept_scan(mu, u, need):
    """Scan candidates in order, accepting index ``i`` iff ``u[i] <= mu[i]``.

    Returns ``(positions, scanned)``: positions of at most ``need`` accepted
    candidates and the number of candidates examined.
    """
    hits = np.flatnonzero(np.asarray(u) <= np.asarray(mu))
    if hits.size >= need:
        hits = hits[:need]
        scanned = int(hits[-1]) + 1 if need > 0 else 0
    else:
        scanned = len(u)
    return hits.astype(np.int64), scanned


def inverse_cdf(cdf, u):
    """Index ``i`` of the first ``cdf[i] > u`` for each uniform, clipped to ``n-1``."""
    idx = np.searchsorted(cdf, u, side="right")
    return np.minimum(idx, len(cdf) - 1).astype(np.int64)
