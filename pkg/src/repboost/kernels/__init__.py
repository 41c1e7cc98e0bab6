"""Hot inner loops: vote totals, stump error tables, accept/reject scans,
inverse-CDF draws.

The compiled Cython module is used when it was built; otherwise the numpy
fallback is selected.  Set ``REPBOOST_PURE=1`` to force the fallback.
Both backends return identical values (integer outputs exactly, float
outputs bit for bit, since accumulation order is the same).
"""

import os

import numpy as np

from . import _pykernels

_compiled = None
if not os.environ.get("REPBOOST_PURE"):
    try:
        from . import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "numpy"
_impl = _compiled if _compiled is not None else _pykernels

__all__ = ["BACKEND", "vote_sum", "stump_mistake_counts",
           "stump_weighted_errors", "accept_scan", "inverse_cdf", "backends"]


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def _i8(a):
    return np.ascontiguousarray(a, dtype=np.int8)


def vote_sum(X, feature, threshold, polarity, weight, impl=None):
    X = _f64(X)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    return (impl or _impl).vote_sum(X, _i64(feature), _f64(threshold),
                                    _i64(polarity), _i64(weight))


def stump_mistake_counts(X, y, thresholds, impl=None):
    return (impl or _impl).stump_mistake_counts(_f64(X), _i8(y), _f64(thresholds))


def stump_weighted_errors(X, y, w, thresholds, impl=None):
    return (impl or _impl).stump_weighted_errors(_f64(X), _i8(y), _f64(w),
                                                 _f64(thresholds))


def accept_scan(mu, u, need, impl=None):
    return (impl or _impl).accept_scan(_f64(mu), _f64(u), int(need))


def inverse_cdf(cdf, u, impl=None):
    return (impl or _impl).inverse_cdf(_f64(cdf), _f64(u))


def backends():
    """Available implementations keyed by name (for tests and benchmarks)."""
    out = {"numpy": _pykernels}
    if _compiled is not None:
        out["cython"] = _compiled
    return out
