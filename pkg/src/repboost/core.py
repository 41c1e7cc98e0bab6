"""Domain model: finite labeled domains, distributions, hypotheses, votes.

Measures (reweighing functions) are plain callables mapping an integer array
of point ids to an array of values in ``[0, 1]``.  They are evaluated lazily
on whichever ids are asked for; only the exact oracles here evaluate them on
the whole domain.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, NamedTuple, Union

import numpy as np

from . import kernels
from .errors import DomainMismatch, ZeroDensity

PROB_TOL = 1e-12

Measure = Callable[[np.ndarray], np.ndarray]


class DomainPoint(NamedTuple):
    id: int
    features: tuple


class Domain:
    """Finite labeled domain: dense ids ``0..n-1``, features and target labels.

    ``ranges`` is the declared feature range per dimension; stump grids are
    built from it, never from samples.
    """

    def __init__(self, features, labels, ranges=None):
        X = np.array(features, dtype=np.float64)
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        y = np.array(labels)
        if X.ndim != 2 or X.shape[0] == 0:
            raise ValueError("features must be a non-empty (n, d) array")
        if y.shape != (X.shape[0],):
            raise ValueError("need exactly one label per point")
        if not np.all((y == 1) | (y == -1)):
            raise ValueError("labels must be -1 or +1")
        if ranges is None:
            ranges = np.stack([X.min(axis=0), X.max(axis=0)], axis=1)
        ranges = np.array(ranges, dtype=np.float64).reshape(X.shape[1], 2)
        if np.any(ranges[:, 0] > ranges[:, 1]):
            raise ValueError("feature range lower bound exceeds upper bound")
        X.setflags(write=False)
        self.features = X
        self.labels = y.astype(np.int8)
        self.labels.setflags(write=False)
        self.ranges = ranges
        self.ranges.setflags(write=False)

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def dim(self) -> int:
        return self.features.shape[1]

    def point(self, i: int) -> DomainPoint:
        return DomainPoint(int(i), tuple(self.features[i].tolist()))

    def label(self, i: int) -> int:
        return int(self.labels[i])

    def __repr__(self):
        return f"Domain(n={self.n}, dim={self.dim})"


class FiniteDistribution:
    """Probability vector over domain ids."""

    def __init__(self, probs):
        p = np.array(probs, dtype=np.float64)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("probs must be a non-empty vector")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise ValueError("probabilities must be finite and nonnegative")
        total = math.fsum(p.tolist())
        if abs(total - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        p.setflags(write=False)
        self.probs = p

    @classmethod
    def uniform(cls, n: int) -> "FiniteDistribution":
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def normalized(cls, weights) -> "FiniteDistribution":
        w = np.asarray(weights, dtype=np.float64)
        return cls(w / math.fsum(w.tolist()))

    @property
    def n(self) -> int:
        return self.probs.size

    @cached_property
    def cdf(self) -> np.ndarray:
        return np.cumsum(self.probs)

    def ids_from_uniforms(self, u: np.ndarray) -> np.ndarray:
        """Inverse-CDF map from uniforms in ``[0, 1)`` to point ids."""
        return kernels.inverse_cdf(self.cdf, u)

    def expect(self, values) -> float:
        return math.fsum((np.asarray(values, dtype=np.float64) * self.probs).tolist())

    def __eq__(self, other):
        return isinstance(other, FiniteDistribution) and np.array_equal(self.probs, other.probs)

    def __repr__(self):
        return f"FiniteDistribution(n={self.n})"


def all_ids(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int64)


@dataclass(frozen=True)
class Hypothesis:
    """Canonical stump or constant classifier.

    A stump predicts ``polarity`` where ``x[feature] > threshold`` and
    ``-polarity`` elsewhere.  Constants use ``feature=-1, threshold=0.0``.
    """

    kind: str
    feature: int
    threshold: float
    polarity: int

    def __post_init__(self):
        if self.kind not in ("stump", "constant"):
            raise ValueError(f"unknown hypothesis kind {self.kind!r}")
        if self.polarity not in (-1, 1):
            raise ValueError("polarity must be -1 or +1")
        if self.kind == "constant" and (self.feature != -1 or self.threshold != 0.0):
            raise ValueError("constants are canonical only as feature=-1, threshold=0.0")
        if self.kind == "stump" and self.feature < 0:
            raise ValueError("stump feature index must be nonnegative")
        object.__setattr__(self, "feature", int(self.feature))
        object.__setattr__(self, "threshold", float(self.threshold))
        object.__setattr__(self, "polarity", int(self.polarity))

    @classmethod
    def stump(cls, feature, threshold, polarity=1):
        return cls("stump", feature, threshold, polarity)

    @classmethod
    def constant(cls, polarity):
        return cls("constant", -1, 0.0, polarity)

    def sort_key(self):
        # stumps before constants, then (feature, threshold, polarity)
        return (0 if self.kind == "stump" else 1, self.feature, self.threshold, self.polarity)

    def margin(self, X) -> np.ndarray:
        return kernels.vote_sum(X, [self.feature], [self.threshold], [self.polarity], [1])

    def predict(self, X) -> np.ndarray:
        return self.margin(X).astype(np.int8)

    def __call__(self, x) -> int:
        return int(self.margin(np.asarray(x, dtype=np.float64).reshape(1, -1))[0])

    def to_dict(self) -> dict:
        return {"kind": self.kind, "feature": self.feature,
                "threshold": self.threshold, "polarity": self.polarity}

    @classmethod
    def from_dict(cls, d) -> "Hypothesis":
        return cls(d["kind"], d["feature"], d["threshold"], d["polarity"])


Predictor = Union[Hypothesis, "MajorityVote"]


@dataclass(frozen=True)
class MajorityVote:
    """Unweighted vote ``sign(sum_t h_t(x))`` with ``sign(0) = +1``.

    Members are hypotheses or, for the two-layer booster, other votes.
    Equality is elementwise in order.
    """

    members: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        for m in self.members:
            if not isinstance(m, (Hypothesis, MajorityVote)):
                raise TypeError(f"cannot vote with {type(m).__name__}")

    def __len__(self):
        return len(self.members)

    @cached_property
    def _compressed(self):
        counts = Counter(self.members)
        distinct = list(counts)
        return distinct, np.array([counts[h] for h in distinct], dtype=np.int64)

    @cached_property
    def _stump_arrays(self):
        distinct, weight = self._compressed
        return (np.array([h.feature for h in distinct], dtype=np.int64),
                np.array([h.threshold for h in distinct], dtype=np.float64),
                np.array([h.polarity for h in distinct], dtype=np.int64),
                weight)

    @property
    def flat(self) -> bool:
        return all(isinstance(m, Hypothesis) for m in self.members)

    def margin(self, X) -> np.ndarray:
        """Integer vote total at every row of ``X``."""
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        if self.flat:
            return kernels.vote_sum(X, *self._stump_arrays)
        distinct, weight = self._compressed
        out = np.zeros(X.shape[0], dtype=np.int64)
        for m, w in zip(distinct, weight.tolist()):
            out += w * m.predict(X).astype(np.int64)
        return out

    def predict(self, X) -> np.ndarray:
        return np.where(self.margin(X) >= 0, 1, -1).astype(np.int8)

    def __call__(self, x) -> int:
        return int(self.predict(np.asarray(x, dtype=np.float64).reshape(1, -1))[0])

    def to_dict(self) -> dict:
        return {"vote": [m.to_dict() for m in self.members]}

    @classmethod
    def from_dict(cls, d) -> "MajorityVote":
        return cls(tuple(predictor_from_dict(m) for m in d["vote"]))

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def fingerprint(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()[:16]


def predictor_from_dict(d) -> Predictor:
    return MajorityVote.from_dict(d) if "vote" in d else Hypothesis.from_dict(d)


def predict_majority(H: MajorityVote, x) -> int:
    """Label of one point (a feature vector or a :class:`DomainPoint`)."""
    if isinstance(x, DomainPoint):
        x = x.features
    return H(x)


def predict_ids(h: Predictor, domain: Domain, ids) -> np.ndarray:
    return h.predict(domain.features[np.asarray(ids, dtype=np.int64)])


def exact_error(h: Predictor, dist: FiniteDistribution, domain: Domain) -> float:
    """``P_{x ~ dist}[h(x) != f(x)]`` by direct summation over the domain."""
    _same_domain(dist, domain)
    wrong = h.predict(domain.features) != domain.labels
    return math.fsum(dist.probs[wrong].tolist())


def evaluate_measure(mu: Measure, n: int) -> np.ndarray:
    vals = np.asarray(mu(all_ids(n)), dtype=np.float64)
    if vals.shape != (n,):
        raise ValueError("measure must return one value per id")
    if np.any(vals < 0.0) or np.any(vals > 1.0) or not np.all(np.isfinite(vals)):
        raise ValueError("measure values must lie in [0, 1]")
    return vals


def density(mu: Measure, dist: FiniteDistribution) -> float:
    """``E_{x ~ dist}[mu(x)]``, exact summation."""
    return dist.expect(evaluate_measure(mu, dist.n))


def reweighted_distribution(mu: Measure, dist: FiniteDistribution) -> FiniteDistribution:
    """``dist_mu(x) = mu(x) dist(x) / d(mu)``."""
    vals = evaluate_measure(mu, dist.n)
    weights = vals * dist.probs
    d = math.fsum(weights.tolist())
    if d <= 0.0:
        raise ZeroDensity("measure has zero density; reweighted distribution undefined")
    return FiniteDistribution(weights / d)


def _same_domain(dist: FiniteDistribution, domain: Domain):
    if dist.n != domain.n:
        raise DomainMismatch(f"distribution over {dist.n} points, domain has {domain.n}")


class ConstantMeasure:
    def __init__(self, value: float):
        if not 0.0 <= value <= 1.0:
            raise ValueError("measure value must be in [0, 1]")
        self.value = float(value)

    def __call__(self, ids):
        return np.full(np.shape(ids), self.value, dtype=np.float64)


class TableMeasure:
    """Measure given explicitly per id (tests and oracles)."""

    def __init__(self, values):
        self.values = np.asarray(values, dtype=np.float64)

    def __call__(self, ids):
        return self.values[np.asarray(ids, dtype=np.int64)]
