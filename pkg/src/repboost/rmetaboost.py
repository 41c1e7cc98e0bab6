"""Two-layer booster with capped misclassification counters.

The outer loop runs ``T`` rounds.  Each round reweighs the distribution by
``mu_t(x) = exp(M_t(x) - c_t)``, trains the inner booster to constant error
``eps0`` on samples from the reweighted distribution, and uses a replicable
threshold check to decide whether the cap ``c`` grows.  ``M_t(x)`` counts the
rounds whose hypothesis misclassified ``x``, capped at ``c_t``, so no point's
weight can blow up relative to the others.

All counters live in :class:`MetaState` as descriptions (the inner votes and
the check bits) and are evaluated per point on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import BoostConfig, ceil_count
from .core import Domain, FiniteDistribution, MajorityVote, all_ids, exact_error
from .errors import ConfigurationError, RepboostError
from .rboost_star import RBoostBudget, rboost_star, rboost_star_budget
from .report import IterationRecord, RunReport
from .rthreshold import ThresholdParams, check_outcome_ok, rthreshold, threshold_sample_size
from .sample import Sample
from .sampling import rejection_input_size, rejection_stream
from .tape import RandomTape


def compute_T(eps: float) -> int:
    """Outer rounds ``ceil(8 ln(2/eps))``, enough for ``exp(-T/8) <= eps/2``."""
    if not 0 < eps < 1:
        raise ConfigurationError(f"eps must be in (0, 1), got {eps}")
    return ceil_count(8.0 * math.log(2.0 / eps))


class MetaState:
    """Counters after ``len(votes)`` rounds, as a value.

    ``votes[s]`` is the inner hypothesis of round ``s+1`` and ``bits[s]`` the
    check bit that followed it.  Evaluations are memoized per domain point.
    """

    def __init__(self, domain: Domain, votes=(), bits=()):
        if len(votes) != len(bits):
            raise ValueError("votes and bits must have equal length")
        self.domain = domain
        self.votes = tuple(votes)
        self.bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")
        self._known = np.zeros(domain.n, dtype=bool)
        self._M = np.zeros(domain.n, dtype=np.int64)
        self._mu = np.zeros(domain.n, dtype=np.float64)

    @property
    def t(self) -> int:
        return len(self.votes) + 1

    @property
    def c(self) -> int:
        return sum(self.bits)

    def mistakes(self, h, ids) -> np.ndarray:
        ids = np.asarray(ids, dtype=np.int64)
        pred = h.predict(self.domain.features[ids])
        return (pred != self.domain.labels[ids]).astype(np.int64)

    def M(self, ids) -> np.ndarray:
        ids = np.asarray(ids, dtype=np.int64)
        todo = np.unique(ids[~self._known[ids]])
        if todo.size:
            m = np.zeros(todo.size, dtype=np.int64)
            c = 0
            for h, b in zip(self.votes, self.bits):
                c += b
                m = np.minimum(m + self.mistakes(h, todo), c)
            self._M[todo] = m
            self._mu[todo] = np.exp((m - self.c).astype(np.float64))
            self._known[todo] = True
        return self._M[ids]

    def N_next(self, h, ids) -> np.ndarray:
        """``N_{t+1} = M_t + 1{h != f}`` for this round's hypothesis ``h``."""
        return self.M(ids) + self.mistakes(h, ids)

    def mu(self, ids) -> np.ndarray:
        """``exp(M_t - c_t)``; the exponent is never positive."""
        ids = np.asarray(ids, dtype=np.int64)
        self.M(ids)
        return self._mu[ids]

    __call__ = mu

    def step(self, h, bit) -> "MetaState":
        return MetaState(self.domain, self.votes + (h,), self.bits + (int(bit),))


def meta_step_counters(state: MetaState, h, b_next) -> MetaState:
    return state.step(h, b_next)


class CapIndicator:
    """``phi(x) = 1{N_{t+1}(x) = c_t + 1}``: points whose count would pass the cap."""

    def __init__(self, state: MetaState, h):
        self.state = state
        self.h = h

    def __call__(self, ids):
        return (self.state.N_next(self.h, ids) == self.state.c + 1).astype(np.float64)


@dataclass(frozen=True)
class MetaBudget:
    rounds: int
    inner_rho: float
    inner: RBoostBudget
    reject_delta: float
    reject_samples: int
    threshold: ThresholdParams
    threshold_samples: int

    @property
    def per_round(self) -> int:
        return self.reject_samples + self.threshold_samples

    @property
    def total(self) -> int:
        return self.rounds * self.per_round


def meta_budget(rho, eps, gamma, learner, config: BoostConfig,
                inner_termination="threshold", rounds=None) -> MetaBudget:
    T = compute_T(eps) if rounds is None else int(rounds)
    if T < 1:
        raise ConfigurationError("at least one round is required")
    inner_rho = rho / (6 * T)
    inner = rboost_star_budget(inner_rho, config.eps0, gamma, learner, config, inner_termination)
    reject_delta = rho / (6 * T)
    reject_samples = 0
    if inner.total > 0:
        # the density stays above eps/32 while every check succeeds
        reject_samples = rejection_input_size(inner.total, eps / 32, reject_delta,
                                              config.scale("meta_reject"), config.rejection_factor)
    params = ThresholdParams(eps / 16, rho / (3 * T), rho / (24 * T))
    m3 = threshold_sample_size(params, config.scale("meta_threshold"), config.c_threshold)
    return MetaBudget(T, inner_rho, inner, reject_delta, reject_samples, params, m3)


def rmetaboost(sample, learner, rho: float, eps: float, gamma: float, tape: RandomTape, *,
               domain: Domain, dist: FiniteDistribution, config: BoostConfig | None = None,
               inner_termination: str = "threshold", rounds: int | None = None):
    """Run the two-layer booster; returns ``(H, report)``.

    When the inner booster needs no samples (exact learner and exact
    termination) it is handed the exact reweighted distribution and the
    outer rejection step is skipped; the outer checks still sample.
    """
    config = config or BoostConfig()
    budget = meta_budget(rho, eps, gamma, learner, config, inner_termination, rounds)
    report = RunReport("rmetaboost", {
        "rho": rho, "eps": eps, "gamma": gamma, "eps0": config.eps0,
        "rounds": budget.rounds, "inner_termination": inner_termination,
        "learner": "oracle" if learner.exact else "replicable",
        "inner_cap": budget.inner.max_iterations,
        "reject_samples": budget.reject_samples,
        "threshold_samples": budget.threshold_samples,
        "inner_samples": budget.inner.total,
    })
    state = MetaState(domain)
    ids = all_ids(domain.n)
    consumed = 0
    for t in range(1, budget.rounds + 1):
        node = tape.derive("meta", t)
        mu_vals = state.mu(ids)
        d = dist.expect(mu_vals)
        rec = IterationRecord(t=t, density=d, c=state.c)
        reweighted = FiniteDistribution.normalized(mu_vals * dist.probs)

        stream = None
        if budget.reject_samples:
            try:
                fresh = sample.take(budget.reject_samples)
            except RepboostError as e:
                raise e.annotate(t, "reject")
            consumed += budget.reject_samples
            stream = rejection_stream(fresh, budget.inner.total, state, node.derive("reject"))
            inner_sample = stream
        else:
            inner_sample = Sample.from_ids(np.empty(0, dtype=np.int64))
        try:
            h, inner = rboost_star(inner_sample, learner, budget.inner_rho, config.eps0, gamma,
                                   node.derive("inner"), domain=domain, dist=reweighted,
                                   config=config, termination=inner_termination)
        except RepboostError as e:
            raise e.annotate(t, "inner")
        if stream is not None:
            rec.scanned = stream.source.scanned
        rec.weak_error = inner.error
        rec.inner_iterations = inner.iterations
        report.weak_calls += inner.weak_calls
        report.inner.append(inner)

        phi = CapIndicator(state, h)
        try:
            fresh = sample.take(budget.threshold_samples)
        except RepboostError as e:
            raise e.annotate(t, "thresh")
        consumed += budget.threshold_samples
        res = rthreshold(fresh, eps / 16, phi, node.derive("thresh"))
        mass = dist.expect(phi(ids))
        rec.bit = res.bit
        rec.threshold_mass = mass
        rec.threshold_ok = check_outcome_ok(mass, eps / 16, res.bit)
        rec.consumed = consumed
        report.records.append(rec)
        report.bits.append(res.bit)
        state = state.step(h, res.bit)

    H = MajorityVote(state.votes)
    report.output = H
    report.error = exact_error(H, dist, domain)
    report.consumed = consumed
    return H, report


def final_state(report: RunReport, domain: Domain) -> MetaState:
    """Rebuild the counters after the last round from a finished report."""
    return MetaState(domain, report.output.members, report.bits)
