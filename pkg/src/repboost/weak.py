"""Weak learners over a fixed, data-independent grid of decision stumps.

Two learners share the grid:

* :class:`OracleStumpLearner` minimizes exact error under a known
  distribution.  It is deterministic, hence perfectly replicable, and lets
  booster tests run without weak-learner noise.
* :class:`ReplicableStumpLearner` minimizes empirical error after rounding
  every error onto a randomly offset grid of width ``gamma/4``; the offset
  comes from the shared tape, so two runs with close empirical errors land
  in the same buckets and return the same stump.
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import kernels
from .config import ceil_count
from .core import Domain, FiniteDistribution, Hypothesis
from .errors import ConfigurationError, NoWeakHypothesis
from .sample import Sample
from .tape import RandomTape

ORACLE_TIE_TOL = 1e-12


class StumpGrid:
    """Stump thresholds per feature at the midpoints of ``K`` equal cells of
    the declared feature range, plus (optionally) the two constants.

    Hypotheses are enumerated in lexicographic ``(feature, threshold,
    polarity)`` order with constants last.
    """

    def __init__(self, thresholds, include_constants=True):
        t = np.array(thresholds, dtype=np.float64)
        if t.ndim != 2 or t.shape[1] == 0:
            raise ValueError("thresholds must be a (d, K) array")
        if np.any(np.diff(t, axis=1) <= 0):
            raise ValueError("thresholds must be strictly increasing per feature")
        t.setflags(write=False)
        self.thresholds = t
        self.include_constants = bool(include_constants)

    @classmethod
    def from_ranges(cls, ranges, per_feature=32, include_constants=True):
        ranges = np.asarray(ranges, dtype=np.float64).reshape(-1, 2)
        k = np.arange(per_feature, dtype=np.float64)
        lo, hi = ranges[:, :1], ranges[:, 1:]
        width = hi - lo
        if np.any(width <= 0):
            # degenerate range: spread a tiny grid around the single value
            width = np.where(width <= 0, 1.0, width)
            lo = np.where(ranges[:, 1:] - ranges[:, :1] <= 0, lo - 0.5, lo)
        return cls(lo + (k + 0.5) * width / per_feature, include_constants)

    @classmethod
    def for_domain(cls, domain: Domain, per_feature=32, include_constants=True):
        return cls.from_ranges(domain.ranges, per_feature, include_constants)

    @property
    def dim(self):
        return self.thresholds.shape[0]

    @property
    def per_feature(self):
        return self.thresholds.shape[1]

    @property
    def size(self) -> int:
        return self.thresholds.size * 2 + (2 if self.include_constants else 0)

    def hypothesis(self, index: int) -> Hypothesis:
        n_stumps = self.thresholds.size * 2
        if index >= n_stumps:
            return Hypothesis.constant(-1 if index == n_stumps else 1)
        f, rest = divmod(index, self.per_feature * 2)
        k, p = divmod(rest, 2)
        return Hypothesis.stump(f, float(self.thresholds[f, k]), -1 if p == 0 else 1)

    def hypotheses(self):
        return [self.hypothesis(i) for i in range(self.size)]

    def flatten(self, table, y_weights):
        """Flat error vector in enumeration order from a ``(d, K, 2)`` table.

        ``y_weights`` is ``(weight of +1 labels, weight of -1 labels)``:
        the errors of constant -1 and constant +1 respectively.
        """
        flat = np.asarray(table).reshape(-1)
        if self.include_constants:
            flat = np.concatenate([flat, np.asarray(y_weights, dtype=flat.dtype)])
        return flat

    def to_json(self) -> str:
        return json.dumps({"thresholds": self.thresholds.tolist(),
                           "include_constants": self.include_constants},
                          sort_keys=True, separators=(",", ":"))

    def __eq__(self, other):
        return (isinstance(other, StumpGrid)
                and self.include_constants == other.include_constants
                and np.array_equal(self.thresholds, other.thresholds))


def exact_stump_errors(dist: FiniteDistribution, domain: Domain, grid: StumpGrid) -> np.ndarray:
    p = dist.probs
    table = kernels.stump_weighted_errors(domain.features, domain.labels, p, grid.thresholds)
    y = domain.labels
    consts = (math.fsum(p[y > 0].tolist()), math.fsum(p[y < 0].tolist()))
    return grid.flatten(table, consts)


def empirical_mistakes(ids, domain: Domain, grid: StumpGrid) -> np.ndarray:
    """Integer mistake count of every grid hypothesis on the sample ``ids``."""
    ids = np.asarray(ids, dtype=np.int64)
    y_all = domain.labels
    if ids.size > domain.n:
        # collapse repeated points into integer multiplicities (exact in float64)
        mult = np.bincount(ids, minlength=domain.n).astype(np.float64)
        table = kernels.stump_weighted_errors(domain.features, y_all, mult, grid.thresholds)
        table = np.rint(table).astype(np.int64)
        pos = int(mult[y_all > 0].sum())
        neg = int(mult[y_all < 0].sum())
    else:
        y = y_all[ids]
        table = kernels.stump_mistake_counts(domain.features[ids], y, grid.thresholds)
        pos = int(np.count_nonzero(y > 0))
        neg = int(np.count_nonzero(y < 0))
    return grid.flatten(table, (pos, neg))


def select_rounded(errors, alpha: float, width: float) -> int:
    """Index of the lexicographically first minimizer of the rounded errors.

    Each error ``e`` is mapped to its bucket ``floor((e - alpha*width)/width)``.
    """
    buckets = np.floor((np.asarray(errors, dtype=np.float64) - alpha * width) / width)
    return int(np.argmin(buckets))


def oracle_stump_learner(dist: FiniteDistribution, domain: Domain, grid: StumpGrid,
                         gamma: float) -> Hypothesis:
    """Lexicographically first grid stump of minimum exact error under ``dist``."""
    errs = exact_stump_errors(dist, domain, grid)
    best = float(errs.min())
    # ties are resolved up to float noise so summation order cannot reorder them
    idx = int(np.flatnonzero(errs <= best + ORACLE_TIE_TOL)[0])
    if errs[idx] > 0.5 - gamma + ORACLE_TIE_TOL:
        raise NoWeakHypothesis(
            f"best grid stump has error {errs[idx]:.6g} > 1/2 - gamma = {0.5 - gamma:.6g}")
    return grid.hypothesis(idx)


def weak_sample_complexity(rho: float, gamma: float, grid_size: int, scale: float = 1.0) -> int:
    """``ceil(scale * 32 ln(2|grid|/rho) / w^2)`` with rounding width ``w = gamma/4``."""
    if not 0 < rho <= 1:
        raise ConfigurationError(f"rho must be in (0, 1], got {rho}")
    w = gamma / 4
    return max(1, ceil_count(scale * 32.0 * math.log(2 * grid_size / rho) / w ** 2))


def replicable_stump_learner(sample: Sample, gamma: float, rho: float, grid: StumpGrid,
                             tape: RandomTape, domain: Domain, scale: float = 1.0) -> Hypothesis:
    sample.require(weak_sample_complexity(rho, gamma, grid.size, scale), "weak learner")
    ids = sample.ids()
    m = ids.size
    errs = empirical_mistakes(ids, domain, grid) / m
    width = gamma / 4
    idx = select_rounded(errs, tape.uniform(0), width)
    if errs[idx] > 0.5 - gamma / 2:
        raise NoWeakHypothesis(
            f"selected stump has empirical error {errs[idx]:.6g} > 1/2 - gamma/2")
    return grid.hypothesis(idx)


class OracleStumpLearner:
    """Exact-distribution learner; needs no samples."""

    exact = True

    def __init__(self, domain: Domain, grid: StumpGrid, gamma: float):
        self.domain = domain
        self.grid = grid
        self.gamma = gamma

    def sample_complexity(self, rho: float) -> int:
        return 0

    def fit_distribution(self, dist: FiniteDistribution) -> Hypothesis:
        return oracle_stump_learner(dist, self.domain, self.grid, self.gamma)


class ReplicableStumpLearner:
    exact = False

    def __init__(self, domain: Domain, grid: StumpGrid, gamma: float, scale: float = 1.0):
        self.domain = domain
        self.grid = grid
        self.gamma = gamma
        self.scale = scale

    def sample_complexity(self, rho: float) -> int:
        return weak_sample_complexity(rho, self.gamma, self.grid.size, self.scale)

    def fit(self, sample: Sample, rho: float, tape: RandomTape) -> Hypothesis:
        return replicable_stump_learner(sample, self.gamma, rho, self.grid, tape,
                                        self.domain, self.scale)
