import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from repboost import kernels
from repboost.kernels import _pykernels

BACKENDS = kernels.backends()
needs_cython = pytest.mark.skipif("cython" not in BACKENDS, reason="extension not built")


def both(fn, *args):
    return [fn(*args, impl=m) for m in BACKENDS.values()]


def data(seed, n=300, d=3, k=8):
    rng = np.random.default_rng(seed)
    X = rng.random((n, d))
    X[: n // 4, 0] = 0.5  # values exactly at thresholds
    y = np.where(rng.random(n) < 0.5, 1, -1)
    w = rng.random(n)
    # strictly increasing per feature (as grids guarantee), one exactly at 0.5
    thr = np.tile((np.arange(k) + 0.5) / k, (d, 1)) + rng.uniform(-0.01, 0.01, (d, k))
    thr[0, k // 2] = 0.5
    return X, y, w, thr


def test_reference_vote_sum():
    X = np.array([[0.2], [0.5], [0.8]])
    out = _pykernels.vote_sum(X, np.array([0, 0]), np.array([0.5, 0.1]),
                              np.array([1, -1]), np.array([2, 1]))
    # x > t predicts polarity; 0.5 is not above 0.5
    assert out.tolist() == [-2 - 1, -2 - 1, 2 - 1]


@needs_cython
@pytest.mark.parametrize("seed", range(5))
def test_backends_agree_exactly(seed):
    X, y, w, thr = data(seed)
    f = np.array([0, 2, 1, 0]); t = np.array([0.5, 0.3, 0.9, 0.1])
    p = np.array([1, -1, 1, -1]); c = np.array([3, 1, 2, 5])
    a, b = both(kernels.vote_sum, X, f, t, p, c)
    assert np.array_equal(a, b)
    a, b = both(kernels.stump_mistake_counts, X, y, thr)
    assert np.array_equal(a, b)
    a, b = both(kernels.stump_weighted_errors, X, y, w, thr)
    assert np.array_equal(a, b)
    mu = np.random.default_rng(seed).random(1000)
    u = np.random.default_rng(seed + 99).random(1000)
    for need in (0, 1, 50, 10_000):
        (h1, s1), (h2, s2) = both(kernels.accept_scan, mu, u, need)
        assert np.array_equal(h1, h2) and s1 == s2


@needs_cython
@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0, 1, allow_nan=False), min_size=1, max_size=40),
       st.lists(st.floats(0, 1, exclude_max=True), min_size=0, max_size=60))
def test_inverse_cdf_backends_agree(weights, u):
    w = np.asarray(weights) + 1e-3
    cdf = np.cumsum(w / w.sum())
    a, b = both(kernels.inverse_cdf, cdf, np.asarray(u, dtype=np.float64))
    assert np.array_equal(a, b)
    assert np.all((a >= 0) & (a < cdf.size))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0, 1, exclude_max=True), min_size=1, max_size=60))
def test_inverse_cdf_matches_searchsorted(u):
    cdf = np.array([0.1, 0.1, 0.5, 0.75, 1.0])
    u = np.asarray(u)
    expected = np.minimum(np.searchsorted(cdf, u, side="right"), cdf.size - 1)
    assert np.array_equal(kernels.inverse_cdf(cdf, u), expected)
    assert not np.any(kernels.inverse_cdf(cdf, u) == 1)  # zero-probability atom


def test_accept_scan_stops_at_need():
    mu = np.ones(10)
    u = np.zeros(10)
    hits, seen = kernels.accept_scan(mu, u, 4)
    assert hits.tolist() == [0, 1, 2, 3] and seen == 4


def test_accept_rule_is_at_most():
    hits, seen = kernels.accept_scan(np.array([0.5, 0.5, 0.0]), np.array([0.5, 0.6, 0.0]), 5)
    assert hits.tolist() == [0, 2] and seen == 3


def test_weighted_errors_match_brute_force():
    X, y, w, thr = data(3, n=50)
    table = kernels.stump_weighted_errors(X, y, w, thr)
    for f in range(X.shape[1]):
        for k in range(thr.shape[1]):
            for p, pol in enumerate((-1, 1)):
                pred = np.where(X[:, f] > thr[f, k], pol, -pol)
                assert table[f, k, p] == pytest.approx(w[pred != y].sum(), abs=1e-12)


def test_fallback_selected_by_environment():
    import os
    import subprocess
    import sys
    env = dict(os.environ, REPBOOST_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import repboost; print(repboost.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
