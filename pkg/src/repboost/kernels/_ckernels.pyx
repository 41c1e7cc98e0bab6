# Compiled versions of the kernels in _pykernels.py.  Same signatures, same
# accumulation order; see that module for the contracts.

import numpy as np
cimport numpy as cnp

cnp.import_array()


def vote_sum(const double[:, :] X, const cnp.int64_t[:] feature,
             const double[:] threshold, const cnp.int64_t[:] polarity,
             const cnp.int64_t[:] weight):
    cdef Py_ssize_t m = X.shape[0], k = feature.shape[0]
    cdef Py_ssize_t i, j
    cdef cnp.int64_t pw, acc
    out = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[:] o = out
    cdef cnp.int64_t const_total = 0
    for j in range(k):
        if feature[j] < 0:
            const_total += polarity[j] * weight[j]
    for i in range(m):
        acc = const_total
        for j in range(k):
            if feature[j] >= 0:
                pw = polarity[j] * weight[j]
                if X[i, feature[j]] > threshold[j]:
                    acc += pw
                else:
                    acc -= pw
        o[i] = acc
    return out


cdef inline Py_ssize_t _lower_bound(const double[:] t, double x) noexcept nogil:
    # number of thresholds strictly below x
    cdef Py_ssize_t lo = 0, hi = t.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if t[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


def stump_mistake_counts(const double[:, :] X, const signed char[:] y,
                         const double[:, :] thresholds):
    cdef Py_ssize_t m = X.shape[0], d = X.shape[1], K = thresholds.shape[1]
    cdef Py_ssize_t f, i, b, k
    out = np.empty((d, K, 2), dtype=np.int64)
    cdef cnp.int64_t[:, :, :] o = out
    pos_arr = np.zeros(K + 1, dtype=np.int64)
    neg_arr = np.zeros(K + 1, dtype=np.int64)
    cdef cnp.int64_t[:] pos = pos_arr
    cdef cnp.int64_t[:] neg = neg_arr
    cdef cnp.int64_t pos_le, neg_le, pos_gt, neg_gt
    for f in range(d):
        for b in range(K + 1):
            pos[b] = 0
            neg[b] = 0
        for i in range(m):
            b = _lower_bound(thresholds[f], X[i, f])
            if y[i] > 0:
                pos[b] += 1
            elif y[i] < 0:
                neg[b] += 1
        pos_le = 0
        neg_le = 0
        for k in range(K):
            pos_le += pos[k]
            neg_le += neg[k]
            o[f, k, 0] = neg_le
            o[f, k, 1] = pos_le
        pos_gt = 0
        neg_gt = 0
        for k in range(K - 1, -1, -1):
            pos_gt += pos[k + 1]
            neg_gt += neg[k + 1]
            o[f, k, 0] += pos_gt
            o[f, k, 1] += neg_gt
    return out


def stump_weighted_errors(const double[:, :] X, const signed char[:] y,
                          const double[:] w, const double[:, :] thresholds):
    cdef Py_ssize_t m = X.shape[0], d = X.shape[1], K = thresholds.shape[1]
    cdef Py_ssize_t f, i, b, k
    out = np.empty((d, K, 2), dtype=np.float64)
    cdef double[:, :, :] o = out
    pos_arr = np.zeros(K + 1, dtype=np.float64)
    neg_arr = np.zeros(K + 1, dtype=np.float64)
    le_arr = np.zeros((K, 2), dtype=np.float64)
    cdef double[:] pos = pos_arr
    cdef double[:] neg = neg_arr
    cdef double[:, :] le = le_arr
    cdef double pos_le, neg_le, pos_gt, neg_gt
    for f in range(d):
        for b in range(K + 1):
            pos[b] = 0.0
            neg[b] = 0.0
        for i in range(m):
            b = _lower_bound(thresholds[f], X[i, f])
            # scatter both arrays for every point to mirror bincount over
            # zero-masked weights
            if y[i] > 0:
                pos[b] += w[i]
                neg[b] += 0.0
            elif y[i] < 0:
                pos[b] += 0.0
                neg[b] += w[i]
            else:
                pos[b] += 0.0
                neg[b] += 0.0
        pos_le = 0.0
        neg_le = 0.0
        for k in range(K):
            pos_le += pos[k]
            neg_le += neg[k]
            le[k, 0] = neg_le
            le[k, 1] = pos_le
        pos_gt = 0.0
        neg_gt = 0.0
        for k in range(K - 1, -1, -1):
            pos_gt += pos[k + 1]
            neg_gt += neg[k + 1]
            o[f, k, 0] = le[k, 0] + pos_gt
            o[f, k, 1] = le[k, 1] + neg_gt
    return out


def accept_scan(const double[:] mu, const double[:] u, Py_ssize_t need):
    cdef Py_ssize_t n = u.shape[0], i, count = 0
    hits = np.empty(min(need, n) if need > 0 else 0, dtype=np.int64)
    cdef cnp.int64_t[:] h = hits
    if need <= 0:
        return hits, 0
    for i in range(n):
        if u[i] <= mu[i]:
            h[count] = i
            count += 1
            if count == need:
                return hits, i + 1
    return hits[:count], n


def inverse_cdf(const double[::1] cdf, const double[::1] u):
    cdef Py_ssize_t n = cdf.shape[0], m = u.shape[0], i, base, size, half
    cdef double x
    out = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[::1] o = out
    for i in range(m):
        x = u[i]
        # branch-free upper bound: count of entries <= x, as
        # searchsorted(side="right")
        base = 0
        size = n
        while size > 1:
            half = size >> 1
            base = base + half if cdf[base + half - 1] <= x else base
            size -= half
        base += cdf[base] <= x
        o[i] = base if base < n else n - 1
    return out
