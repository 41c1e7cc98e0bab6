"""Smooth booster with periodic replicable termination checks.

Each round draws weak-learner inputs from the reweighted distribution by
rejection, adds the weak hypothesis to the margin function ``g`` and decays
the measure of well-classified points.  Every ``floor(1/gamma)`` rounds a
replicable threshold check tests whether the measure's density has dropped
below ``eps/2``; the loop exits when it has.

With ``termination="exact"`` the check compares the exact density instead,
and an oracle learner (``learner.exact``) is fed the exact reweighted
distribution instead of samples.  Those switches isolate the boosting logic
from sampling noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .config import BoostConfig, ceil_count, check_period
from .core import (Domain, FiniteDistribution, MajorityVote, all_ids, exact_error)
from .errors import ConfigurationError, IterationCapExceeded, RepboostError, ZeroDensity
from .report import IterationRecord, RunReport
from .rthreshold import ThresholdParams, check_outcome_ok, rthreshold, threshold_sample_size
from .sampling import rejection_input_size, rejection_sample
from .tape import RandomTape

TERMINATIONS = ("threshold", "exact")


def mu_star(g, gamma):
    """``1`` where ``g <= 0``, else ``(1 - gamma)^(g/2)``."""
    arr = np.asarray(g, dtype=np.float64)
    out = np.where(arr > 0, np.power(1.0 - gamma, np.maximum(arr, 0.0) / 2.0), 1.0)
    return float(out) if np.ndim(g) == 0 else out


def margin_offset(gamma: float) -> float:
    """Per-round margin deduction ``gamma / (2 + gamma)``."""
    return gamma / (2.0 + gamma)


class VoteBuilder:
    """Growing hypothesis list with a compressed (distinct, count) view."""

    def __init__(self):
        self.hypotheses = []
        self._counts = {}
        self._arrays = None

    def __len__(self):
        return len(self.hypotheses)

    def add(self, h):
        self.hypotheses.append(h)
        self._counts[h] = self._counts.get(h, 0) + 1
        self._arrays = None

    def arrays(self):
        if self._arrays is None:
            hs = list(self._counts)
            self._arrays = (np.array([h.feature for h in hs], dtype=np.int64),
                            np.array([h.threshold for h in hs], dtype=np.float64),
                            np.array([h.polarity for h in hs], dtype=np.int64),
                            np.array([self._counts[h] for h in hs], dtype=np.int64))
        return self._arrays

    def vote(self) -> MajorityVote:
        return MajorityVote(tuple(self.hypotheses))


class BoostMeasure:
    """``mu`` evaluated from the description ``g(x) = f(x) sum_s h_s(x) - count*theta``.

    Values are memoized per domain point as they are first requested.
    """

    def __init__(self, domain: Domain, arrays, count: int, theta: float, gamma: float):
        self.domain = domain
        self.arrays = arrays
        self.count = count
        self.theta = theta
        self.gamma = gamma
        self._known = np.zeros(domain.n, dtype=bool)
        self._vals = np.zeros(domain.n, dtype=np.float64)

    def g(self, ids):
        ids = np.asarray(ids, dtype=np.int64)
        uniq, inv = np.unique(ids, return_inverse=True)
        votes = kernels.vote_sum(self.domain.features[uniq], *self.arrays)
        g = votes * self.domain.labels[uniq].astype(np.int64) - self.count * self.theta
        return g[inv]

    def __call__(self, ids):
        ids = np.asarray(ids, dtype=np.int64)
        todo = ids[~self._known[ids]]
        if todo.size:
            todo = np.unique(todo)
            self._vals[todo] = mu_star(self.g(todo), self.gamma)
            self._known[todo] = True
        return self._vals[ids]


@dataclass(frozen=True)
class RBoostBudget:
    max_iterations: int
    period: int
    weak_rho: float
    weak_samples: int
    reject_delta: float
    reject_samples: int
    threshold: ThresholdParams | None
    threshold_samples: int
    max_checks: int

    @property
    def total(self) -> int:
        """Fresh samples needed to run to the iteration cap."""
        return (self.max_iterations * self.reject_samples
                + self.max_checks * self.threshold_samples)


def rboost_star_budget(rho, eps, gamma, learner, config: BoostConfig,
                       termination="threshold") -> RBoostBudget:
    if termination not in TERMINATIONS:
        raise ConfigurationError(f"termination must be one of {TERMINATIONS}")
    t_max = ceil_count(config.iteration_constant / (eps * gamma ** 2))
    period = check_period(gamma)
    weak_rho = rho / (6 * t_max)
    reject_delta = rho / (6 * t_max)
    if learner.exact:
        weak_samples = reject_samples = 0
    else:
        weak_samples = learner.sample_complexity(weak_rho)
        # after a passing check the density is > eps/4, and at most halves
        # before the next check
        reject_samples = rejection_input_size(weak_samples, eps / 8, reject_delta,
                                              config.scale("reject"), config.rejection_factor)
    params = None
    threshold_samples = 0
    if termination == "threshold":
        rho_check = rho / (6 * gamma * t_max)
        delta = min(rho / (48 * gamma * t_max), rho_check / 8)
        params = ThresholdParams(eps / 2, rho_check, delta)
        threshold_samples = threshold_sample_size(params, config.scale("threshold"),
                                                  config.c_threshold)
    return RBoostBudget(t_max, period, weak_rho, weak_samples, reject_delta,
                        reject_samples, params, threshold_samples, t_max // period)


def rboost_star(sample, learner, rho: float, eps: float, gamma: float, tape: RandomTape, *,
                domain: Domain, dist: FiniteDistribution, config: BoostConfig | None = None,
                termination: str = "threshold"):
    """Run the booster; returns ``(H, report)``.

    ``dist`` is the distribution ``sample`` is drawn from; it is used only
    by the exact oracles (and by exact learners/termination when selected).
    """
    config = config or BoostConfig()
    budget = rboost_star_budget(rho, eps, gamma, learner, config, termination)
    theta = margin_offset(gamma)
    builder = VoteBuilder()
    report = RunReport("rboost_star", {
        "rho": rho, "eps": eps, "gamma": gamma, "termination": termination,
        "learner": "oracle" if learner.exact else "replicable",
        "max_iterations": budget.max_iterations, "period": budget.period,
        "weak_samples": budget.weak_samples, "reject_samples": budget.reject_samples,
        "threshold_samples": budget.threshold_samples,
    })
    ids = all_ids(domain.n)
    consumed = 0
    t = 0
    while True:
        t += 1
        if t > budget.max_iterations:
            raise IterationCapExceeded(
                f"no termination within {budget.max_iterations} rounds")
        mu = BoostMeasure(domain, builder.arrays(), t - 1, theta, gamma)
        mu_vals = mu(ids)
        weights = mu_vals * dist.probs
        d = dist.expect(mu_vals)
        rec = IterationRecord(t=t, density=d)
        reweighted = FiniteDistribution(weights / weights.sum()) if d > 0 else None
        try:
            if learner.exact:
                if reweighted is None:
                    raise ZeroDensity("measure underflowed to zero density")
                h = learner.fit_distribution(reweighted)
            else:
                fresh = sample.take(budget.reject_samples)
                consumed += budget.reject_samples
                drawn = rejection_sample(fresh, budget.weak_samples, mu, tape.derive("reject", t))
                rec.scanned = drawn.scanned
                h = learner.fit(drawn, budget.weak_rho, tape.derive("wl", t))
        except RepboostError as e:
            raise e.annotate(t, "weak")
        if reweighted is not None:
            rec.weak_error = exact_error(h, reweighted, domain)
        builder.add(h)

        stop = False
        if t % budget.period == 0:
            if termination == "exact":
                stop = d < eps / 2
                rec.bit = 0 if stop else 1
            else:
                try:
                    fresh = sample.take(budget.threshold_samples)
                except RepboostError as e:
                    raise e.annotate(t, "thresh")
                consumed += budget.threshold_samples
                res = rthreshold(fresh, eps / 2, mu, tape.derive("thresh", t))
                rec.bit = res.bit
                rec.threshold_mass = d
                rec.threshold_ok = check_outcome_ok(d, eps / 2, res.bit)
                stop = res.bit == 0
        rec.consumed = consumed
        report.records.append(rec)
        if stop:
            break

    H = builder.vote()
    report.output = H
    report.error = exact_error(H, dist, domain)
    report.weak_calls = t
    report.consumed = consumed
    return H, report
