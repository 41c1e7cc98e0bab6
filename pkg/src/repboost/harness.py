"""Verification engine: paired-run replicability, Monte Carlo rates, audits.

Every suite returns a list of verdict dicts (one per acceptance criterion)
with the measured value, the pass threshold and the runtime, so results can
be written straight to JSON.

Seeding: trial ``i`` of an experiment with seed ``s`` gets the root seed
``trial_seed(s, i)``; its algorithm tape is ``root/algo`` and its data tape
``root/sample:j``.  A replicability pair shares the algorithm tape and uses
``j = 0, 1`` for its two independent samples.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from .config import BoostConfig, ceil_count, check_period
from .core import (ConstantMeasure, FiniteDistribution, Hypothesis, TableMeasure, all_ids,
                   reweighted_distribution)
from .domains import margin_domain
from .errors import ConfigurationError, DomainMismatch, PreconditionUnmet, RepboostError
from .kernels import BACKEND
from .rboost_star import rboost_star
from .report import RunReport
from .rmetaboost import MetaState, compute_T, final_state, rmetaboost
from .rthreshold import ThresholdParams, rthreshold
from .sample import Sample
from .sampling import rejection_sample
from .tape import RandomTape
from .weak import OracleStumpLearner, ReplicableStumpLearner, StumpGrid

Z95 = 1.959963984540054
AUDIT_SLACK = 1e-9


# ---------------------------------------------------------------- statistics

def wilson_interval(successes: int, trials: int, z: float = Z95):
    if trials <= 0:
        return 0.0, 1.0
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass(frozen=True)
class RateEstimate:
    successes: int
    trials: int

    @property
    def rate(self) -> float:
        return self.successes / self.trials if self.trials else float("nan")

    @property
    def interval(self):
        return wilson_interval(self.successes, self.trials)

    @property
    def half_width(self) -> float:
        lo, hi = self.interval
        return (hi - lo) / 2

    def passes(self, target: float) -> bool:
        """``rate >= target - half_width`` of the 95% Wilson interval."""
        return self.trials > 0 and self.rate >= target - self.half_width

    def to_dict(self):
        lo, hi = self.interval
        return {"successes": self.successes, "trials": self.trials, "rate": self.rate,
                "ci95": [lo, hi], "half_width": self.half_width}


def _probs(p):
    return p.probs if isinstance(p, FiniteDistribution) else np.asarray(p, dtype=np.float64)


def tv_distance(p, q) -> float:
    a, b = _probs(p), _probs(q)
    if a.shape != b.shape:
        raise DomainMismatch(f"distributions over {a.size} and {b.size} points")
    return 0.5 * math.fsum(np.abs(a - b).tolist())


def empirical_distribution(ids, n: int) -> FiniteDistribution:
    ids = np.asarray(ids, dtype=np.int64)
    if ids.size == 0:
        raise ValueError("empty sample")
    return FiniteDistribution.normalized(np.bincount(ids, minlength=n).astype(np.float64))


# ------------------------------------------------------------- paired runs

def _seed_of(seed: int, tag: str, index: int) -> int:
    return int(RandomTape(seed).derive(tag, index).raw(0, 1)[0])


def trial_seed(seed: int, index: int) -> int:
    return _seed_of(seed, "trial", index)


def pair_seed(seed: int, index: int) -> int:
    return _seed_of(seed, "pair", index)


def outcome_key(output) -> str:
    if hasattr(output, "canonical_json"):
        return output.canonical_json()
    if isinstance(output, Hypothesis):
        return json.dumps(output.to_dict(), sort_keys=True)
    return repr(output)


@dataclass
class RunOutcome:
    key: str
    failed: bool = False
    report: RunReport | None = None
    detail: str = ""
    seconds: float = 0.0


def run_once(algo, sample, tape) -> RunOutcome:
    """Run ``algo(sample, tape)``; library errors become failed outcomes."""
    t0 = time.perf_counter()
    try:
        result = algo(sample, tape)
    except RepboostError as e:
        return RunOutcome(repr(e.signature), True, None, str(e), time.perf_counter() - t0)
    output, report = result if isinstance(result, tuple) else (result, None)
    return RunOutcome(outcome_key(output), False, report, "", time.perf_counter() - t0)


@dataclass
class PairedTrialResult:
    root_seed: int
    first: RunOutcome
    second: RunOutcome

    @property
    def both_failed(self) -> bool:
        return self.first.failed and self.second.failed and self.first.key == self.second.key

    @property
    def agree(self) -> bool:
        return not self.first.failed and not self.second.failed and self.first.key == self.second.key

    @property
    def seconds(self) -> float:
        return self.first.seconds + self.second.seconds


def make_pair(tape_a: RandomTape, first: RunOutcome, tape_b: RandomTape,
              second: RunOutcome) -> PairedTrialResult:
    """Pair two runs; they must have used the same tape."""
    if tape_a != tape_b:
        raise ConfigurationError(
            f"runs with tapes {tape_a.label()} and {tape_b.label()} are not a pair")
    return PairedTrialResult(tape_a.root_seed, first, second)


def paired_trial(algo, dist: FiniteDistribution, seed: int, index: int = 0) -> PairedTrialResult:
    root = pair_seed(seed, index)
    tape = RandomTape(root).derive("algo")
    runs = [run_once(algo, Sample.draw(dist, RandomTape(root).derive("sample", j)), tape)
            for j in (0, 1)]
    return make_pair(tape, runs[0], tape, runs[1])


def map_trials(fn, items, jobs: int = 1):
    """``[fn(x) for x in items]``, optionally across processes (order kept)."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


@dataclass
class ReplicabilityEstimate:
    agree: int
    disagree: int
    both_failed: int
    results: list = field(default_factory=list, repr=False)

    @property
    def estimate(self) -> RateEstimate:
        return RateEstimate(self.agree, self.agree + self.disagree)

    def to_dict(self):
        return {"agree": self.agree, "disagree": self.disagree,
                "both_failed": self.both_failed, **self.estimate.to_dict()}


def _pair_job(args):
    algo, dist, seed, index = args
    return paired_trial(algo, dist, seed, index)


def estimate_replicability(algo, dist: FiniteDistribution, pairs: int, seed: int,
                           jobs: int = 1) -> ReplicabilityEstimate:
    """Agreement rate of ``pairs`` shared-tape runs on independent samples.

    Pairs where both runs fail the same way are counted separately and
    left out of the rate; any other failure counts as disagreement.
    """
    if pairs < 30:
        raise ConfigurationError("at least 30 pairs are needed for a rate estimate")
    results = map_trials(_pair_job, [(algo, dist, seed, i) for i in range(pairs)], jobs)
    both = sum(r.both_failed for r in results)
    agree = sum(r.agree for r in results)
    return ReplicabilityEstimate(agree, len(results) - agree - both, both, results)


# ------------------------------------------------------------------- audits

@dataclass
class AuditResult:
    passed: bool
    checked: int = 0
    violations: list = field(default_factory=list)
    value: float | None = None
    bound: float | None = None

    def to_dict(self):
        return {"passed": self.passed, "checked": self.checked, "value": self.value,
                "bound": self.bound, "violations": self.violations[:20]}


def halving_audit(densities, period: int) -> AuditResult:
    """``d_{t+k} >= d_t / 2`` for every ``t`` and ``1 <= k <= period``."""
    d = list(densities)
    bad, checked = [], 0
    for t in range(len(d)):
        for k in range(1, period + 1):
            if t + k >= len(d):
                break
            checked += 1
            if d[t + k] < d[t] / 2 * (1 - AUDIT_SLACK):
                bad.append({"t": t + 1, "k": k, "d_t": d[t], "d_tk": d[t + k]})
    return AuditResult(not bad, checked, bad)


def high_density_audit(report: RunReport, eps: float) -> AuditResult:
    """``d(mu_t) >= eps/32`` at every round preceded only by successful checks."""
    bound = eps / 32
    bad, checked = [], 0
    for rec in report.records:
        checked += 1
        if rec.density < bound * (1 - AUDIT_SLACK):
            bad.append({"t": rec.t, "density": rec.density})
        if rec.threshold_ok is False:
            break
    return AuditResult(not bad, checked, bad, bound=bound)


def density_audit(report: RunReport) -> dict:
    """Density inequalities applicable to the report's algorithm."""
    if report.algorithm == "rboost_star":
        return {"halving": halving_audit(report.densities, report.params["period"])}
    out = {"high_density": high_density_audit(report, report.params["eps"])}
    inner = [r for r in report.inner if r.records]
    if inner:
        audits = [halving_audit(r.densities, r.params["period"]) for r in inner]
        out["inner_halving"] = AuditResult(all(a.passed for a in audits),
                                           sum(a.checked for a in audits),
                                           [v for a in audits for v in a.violations])
    return out


def exp_weight_audit(report: RunReport, domain, dist: FiniteDistribution,
                     eps0: float) -> AuditResult:
    """Exact ``E[exp(M_{T+1})]`` against ``exp(2 T eps0)``.

    Raises :class:`PreconditionUnmet` when some inner hypothesis has exact
    reweighted error above ``eps0``; such runs are excluded, not failed.
    """
    for rec in report.records:
        if rec.weak_error is None or rec.weak_error > eps0 + 1e-12:
            raise PreconditionUnmet(f"round {rec.t}: inner error {rec.weak_error} > {eps0}")
    T = len(report.records)
    if T == 0:
        value = 1.0
    else:
        M = final_state(report, domain).M(all_ids(domain.n))
        value = dist.expect(np.exp(M.astype(np.float64)))
    bound = math.exp(2 * T * eps0)
    return AuditResult(value <= bound * (1 + AUDIT_SLACK), 1, [], value, bound)


def cap_coherence_audit(report: RunReport, domain, dist: FiniteDistribution) -> AuditResult:
    """After every step with ``b = 1``: ``P[N_{t+1} > c_{t+1}] = 0`` exactly."""
    ids = all_ids(domain.n)
    votes, bits = report.output.members, report.bits
    state = MetaState(domain)
    bad, checked = [], 0
    for h, b in zip(votes, bits):
        if b == 1:
            checked += 1
            mass = dist.expect((state.N_next(h, ids) > state.c + 1).astype(np.float64))
            if mass != 0:
                bad.append({"t": state.t, "mass": mass})
        state = state.step(h, b)
    return AuditResult(not bad, checked, bad)


def threshold_audit(report: RunReport) -> AuditResult:
    bad = [{"t": r.t, "mass": r.threshold_mass, "bit": r.bit}
           for r in report.records if r.threshold_ok is False]
    checked = sum(r.threshold_ok is not None for r in report.records)
    return AuditResult(not bad, checked, bad)


# -------------------------------------------------------- experiment runs

MODES = ("exact", "sampled")
ALGORITHMS = ("rboost-star", "rmetaboost")


def make_learner(mode: str, domain, config: BoostConfig):
    grid = StumpGrid.for_domain(domain, config.grid_size)
    if mode == "exact":
        return OracleStumpLearner(domain, grid, config.gamma)
    if mode == "sampled":
        return ReplicableStumpLearner(domain, grid, config.gamma, config.scale("weak"))
    raise ConfigurationError(f"mode must be one of {MODES}, got {mode!r}")


def boost_algo(algorithm: str, mode: str, config: BoostConfig, domain, dist, sample, tape):
    """One booster run in ``mode``: exact = oracle learner and exact-density
    termination (inner termination for the two-layer booster), sampled = the
    replicable learner and threshold checks throughout."""
    learner = make_learner(mode, domain, config)
    termination = "exact" if mode == "exact" else "threshold"
    if algorithm == "rboost-star":
        return rboost_star(sample, learner, config.rho, config.eps, config.gamma, tape,
                           domain=domain, dist=dist, config=config, termination=termination)
    if algorithm == "rmetaboost":
        return rmetaboost(sample, learner, config.rho, config.eps, config.gamma, tape,
                          domain=domain, dist=dist, config=config,
                          inner_termination=termination)
    raise ConfigurationError(f"algorithm must be one of {ALGORITHMS}, got {algorithm!r}")


@dataclass
class TrialResult:
    index: int
    outcome: RunOutcome

    def row(self) -> dict:
        rep = self.outcome.report
        failed = self.outcome.failed
        return {
            "trial": self.index,
            "error": "" if failed else repr(rep.error),
            "iterations": "" if failed else rep.iterations,
            "wl_calls": "" if failed else rep.weak_calls,
            "failed": int(failed),
            "agreement_key": _short_hash(self.outcome.key),
        }


def _short_hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _trial_job(args):
    algorithm, mode, config, domain, dist, seed, index = args
    root = trial_seed(seed, index)
    algo = partial(boost_algo, algorithm, mode, config, domain, dist)
    sample = Sample.draw(dist, RandomTape(root).derive("sample", 0))
    return TrialResult(index, run_once(algo, sample, RandomTape(root).derive("algo")))


def run_trials(algorithm, mode, config, domain, dist, seed, trials, jobs=1):
    jobs_args = [(algorithm, mode, config, domain, dist, seed, i) for i in range(trials)]
    out = map_trials(_trial_job, jobs_args, jobs)
    return sorted(out, key=lambda r: r.index)


SUMMARY_FIELDS = ("trial", "error", "iterations", "wl_calls", "failed", "agreement_key")


def summary_csv(results) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SUMMARY_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in results:
        w.writerow(r.row())
    return buf.getvalue()


# ------------------------------------------------------------ desk presets

# Component scales for desk-scale runs.  The oracle pipeline only samples
# in the outer checks; the sampled preset keeps the rejection ratios near
# their theoretical values (so acceptance never runs dry) and shrinks the
# weak-learner and check sizes, which is what replicability trades against.
ORACLE_META_SCALES = {"meta_threshold_scale": 1e-5}
SAMPLED_META = {
    "rho": 0.5, "eps": 0.5, "gamma": 1 / 6,
    "weak_scale": 0.005, "reject_scale": 0.05, "threshold_scale": 1e-13,
    "meta_reject_scale": 1e-8, "meta_threshold_scale": 1e-4,
}
SMOKE_DOMAIN = {"size": 8, "margin": 1 / 6, "seed": 3}


def trial_domain(seed: int, index: int, size=64, margin=0.1):
    """Fresh margin domain for trial ``index``."""
    return margin_domain(size, margin, seed=_seed_of(seed, "domain", index))[:2]


def _verdict(criterion, name, passed, measured, threshold, seconds, limit=None, **details):
    ok = bool(passed) and (limit is None or seconds <= limit)
    return {"criterion": criterion, "name": name, "passed": ok, "measured": measured,
            "threshold": threshold, "runtime_s": round(seconds, 3), "runtime_limit_s": limit,
            "details": details}


# ---------------------------------------------------------------- suites

def bernoulli(mean: float):
    """Two-point source whose indicator ``phi`` has expectation ``mean``."""
    return FiniteDistribution([mean, 1.0 - mean]), TableMeasure([1.0, 0.0])


def _threshold_algo(z, phi, params, m, sample, tape):
    return rthreshold(sample.take(m), z, phi, tape, params).bit


def _threshold_job(args):
    mean, z, params, m, seed, index = args
    dist, phi = bernoulli(mean)
    root = RandomTape(trial_seed(seed, index))
    sample = Sample.draw(dist, root.derive("sample", 0), length=m)
    res = rthreshold(sample, z, phi, root.derive("algo"), params)
    return res.bit, res.mean, res.cutoff


def threshold_trials(mean, z=0.1, rho=0.5, delta=0.05, m=83_887, trials=500, seed=0, jobs=1,
                     enforce=True):
    """``(bit, empirical mean, cutoff)`` per trial; ``enforce=False`` allows
    samples below the size bound."""
    params = ThresholdParams(z, rho, delta) if enforce else None
    return map_trials(_threshold_job, [(mean, z, params, m, seed, i) for i in range(trials)], jobs)


def suite_threshold(seed=0, trials=500, pairs=500, jobs=1):
    z, rho, delta, m = 0.1, 0.5, 0.05, 83_887
    t0 = time.perf_counter()
    low = threshold_trials(0.05, z, rho, delta, m, trials, seed, jobs)
    high = threshold_trials(0.2, z, rho, delta, m, trials, seed + 1, jobs)
    zero = RateEstimate(sum(b == 0 for b, _, _ in low), trials)
    one = RateEstimate(sum(b == 1 for b, _, _ in high), trials)
    t1 = time.perf_counter()
    c1 = _verdict(1, "rthreshold correctness", zero.passes(0.95) and one.passes(0.95),
                  {"b0_at_0.05": zero.rate, "b1_at_0.2": one.rate}, "0.95 - CI", t1 - t0, 120,
                  low=zero.to_dict(), high=one.to_dict(), m=m)
    dist, phi = bernoulli(z)
    algo = partial(_threshold_algo, z, phi, ThresholdParams(z, rho, delta), m)
    est = estimate_replicability(algo, dist, pairs, seed + 2, jobs)
    t2 = time.perf_counter()
    c2 = _verdict(2, "rthreshold replicability", est.estimate.passes(1 - rho),
                  est.estimate.rate, "0.5 - CI", t2 - t1, 240, **est.to_dict())
    return [c1, c2]


def rejection_fixture(seed=0, n=16):
    """Random distribution on ``n`` points and a nonconstant measure."""
    tape = RandomTape(seed).derive("fixture")
    dist = FiniteDistribution.normalized(0.5 + tape.derive("probs").uniforms(0, n))
    mu = TableMeasure(0.1 + 0.9 * tape.derive("mu").uniforms(0, n))
    return dist, mu


def suite_rejection(seed=0, draws=100_000, jobs=1):
    t0 = time.perf_counter()
    dist, mu = rejection_fixture(seed)
    root = RandomTape(seed)
    out = rejection_sample(Sample.draw(dist, root.derive("sample", 0)), draws, mu,
                           root.derive("reject"))
    target = reweighted_distribution(mu, dist)
    tv = tv_distance(empirical_distribution(out.ids(), dist.n), target)
    src = Sample.draw(dist, root.derive("sample", 1), length=1000)
    ident = rejection_sample(src, 1000, ConstantMeasure(1.0), root.derive("identity"))
    identity = bool(np.array_equal(ident.ids(), src.ids()))
    t1 = time.perf_counter()
    return [_verdict(3, "rejection sampler fidelity", tv <= 0.05 and identity,
                     {"tv": tv, "identity_exact": identity}, "tv <= 0.05", t1 - t0, 30,
                     scanned=int(out.scanned))]


def _rboost_job(args):
    seed, index, config = args
    domain, dist = trial_domain(seed, index)
    root = RandomTape(trial_seed(seed, index))
    learner = make_learner("exact", domain, config)
    H, rep = rboost_star(Sample.draw(dist, root.derive("sample", 0)), learner, config.rho,
                         config.eps, config.gamma, root.derive("algo"), domain=domain,
                         dist=dist, config=config, termination="exact")
    return rep


def rboost_star_trials(seed=0, trials=100, config=None, jobs=1):
    config = config or BoostConfig(eps=1 / 16, gamma=0.1)
    return map_trials(_rboost_job, [(seed, i, config) for i in range(trials)], jobs)


def suite_rboost_star(seed=0, trials=100, jobs=1):
    config = BoostConfig(eps=1 / 16, gamma=0.1)
    t0 = time.perf_counter()
    reports = rboost_star_trials(seed, trials, config, jobs)
    t1 = time.perf_counter()
    cap = ceil_count(config.iteration_constant / (config.eps * config.gamma ** 2))
    good = RateEstimate(sum(r.error <= config.eps for r in reports), trials)
    within = all(r.iterations <= cap for r in reports)
    c4 = _verdict(4, "rboost* correctness", good.rate >= 0.95 and within, good.rate, ">= 0.95",
                  t1 - t0, 120, cap=cap, max_iterations=max(r.iterations for r in reports),
                  errors=good.to_dict())
    period = check_period(config.gamma)
    audits = [halving_audit(r.densities, period) for r in reports]
    violations = sum(len(a.violations) for a in audits)
    c5 = _verdict(5, "scaled-measures invariant", violations == 0, violations, 0,
                  time.perf_counter() - t1, checked=sum(a.checked for a in audits))
    return [c4, c5]


def _meta_job(args):
    seed, index, config = args
    domain, dist = trial_domain(seed, index)
    root = RandomTape(trial_seed(seed, index))
    learner = make_learner("exact", domain, config)
    H, rep = rmetaboost(Sample.draw(dist, root.derive("sample", 0)), learner, config.rho,
                        config.eps, config.gamma, root.derive("algo"), domain=domain, dist=dist,
                        config=config, inner_termination="exact")
    return rep, domain, dist


def rmetaboost_trials(seed=0, trials=100, config=None, jobs=1):
    config = config or BoostConfig(eps=0.1, gamma=0.1, rho=0.5, **ORACLE_META_SCALES)
    return map_trials(_meta_job, [(seed, i, config) for i in range(trials)], jobs)


def suite_rmetaboost(seed=0, trials=100, jobs=1):
    config = BoostConfig(eps=0.1, gamma=0.1, rho=0.5, **ORACLE_META_SCALES)
    t0 = time.perf_counter()
    runs = rmetaboost_trials(seed, trials, config, jobs)
    t1 = time.perf_counter()
    T = compute_T(config.eps)
    inner_cap = ceil_count(config.iteration_constant / (config.eps0 * config.gamma ** 2))
    good = RateEstimate(sum(rep.error <= config.eps for rep, _, _ in runs), trials)
    calls_ok = all(rep.weak_calls <= T * inner_cap for rep, _, _ in runs)
    rounds_ok = T == 24 and all(rep.iterations == T for rep, _, _ in runs)
    c6 = _verdict(6, "rmetaboost correctness", good.passes(1 - config.rho) and calls_ok and rounds_ok,
                  good.rate, "0.5 - CI", t1 - t0, 300, T=T, inner_cap=inner_cap,
                  max_weak_calls=max(rep.weak_calls for rep, _, _ in runs), errors=good.to_dict())
    hd = [high_density_audit(rep, config.eps) for rep, _, _ in runs]
    hd_bad = sum(len(a.violations) for a in hd)
    c7 = _verdict(7, "high-density invariant", hd_bad == 0, hd_bad, 0, 0.0,
                  checked=sum(a.checked for a in hd), bound=config.eps / 32)
    values, excluded, ew_bad = [], 0, 0
    for rep, domain, dist in runs:
        try:
            a = exp_weight_audit(rep, domain, dist, config.eps0)
        except PreconditionUnmet:
            excluded += 1
            continue
        values.append(a.value)
        ew_bad += not a.passed
    c8 = _verdict(8, "exponential-weight audit", ew_bad == 0 and values, ew_bad, 0, 0.0,
                  audited=len(values), excluded=excluded, bound=math.exp(2 * T * config.eps0),
                  max_value=max(values) if values else None)
    return [c6, c7, c8]


def smoke_setup(config=None):
    config = config or BoostConfig(**SAMPLED_META)
    domain, dist, _ = margin_domain(SMOKE_DOMAIN["size"], SMOKE_DOMAIN["margin"],
                                    seed=SMOKE_DOMAIN["seed"])
    algo = partial(boost_algo, "rmetaboost", "sampled", config, domain, dist)
    return algo, dist


def suite_replicability(seed=0, pairs=100, jobs=1):
    algo, dist = smoke_setup()
    t0 = time.perf_counter()
    est = estimate_replicability(algo, dist, pairs, seed, jobs)
    elapsed = time.perf_counter() - t0
    per_pair = float(np.mean([r.seconds for r in est.results]))
    ok = est.estimate.passes(0.5) and per_pair <= 5.0
    return [_verdict(9, "end-to-end replicability", ok, est.estimate.rate, "0.5 - CI", elapsed,
                     mean_pair_s=per_pair, max_pair_s=max(r.seconds for r in est.results),
                     **est.to_dict())]


def suite_determinism(seed=0, trials=3, jobs=1):
    t0 = time.perf_counter()
    domain, dist = trial_domain(seed, 0)
    texts = []
    for _ in range(2):
        parts = [summary_csv(run_trials("rboost-star", "exact", BoostConfig(eps=1 / 16),
                                        domain, dist, seed, trials, jobs)),
                 summary_csv(run_trials("rmetaboost", "exact",
                                        BoostConfig(**ORACLE_META_SCALES),
                                        domain, dist, seed, trials, jobs))]
        algo, sdist = smoke_setup()
        pair = paired_trial(algo, sdist, seed, 0)
        parts.append(f"{pair.first.key}\n{pair.second.key}\n")
        texts.append("".join(parts))
    same = texts[0] == texts[1]
    return [_verdict(10, "determinism", same, same, True, time.perf_counter() - t0,
                     bytes=len(texts[0].encode()))]


SUITES = {
    "threshold": suite_threshold,
    "rejection": suite_rejection,
    "rboost-star": suite_rboost_star,
    "rmetaboost": suite_rmetaboost,
    "replicability": suite_replicability,
    "determinism": suite_determinism,
}


def verify(names=None, seed=0, jobs=1, progress=None) -> dict:
    """Run the named suites (all by default) and return a verdict document."""
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ConfigurationError(f"unknown suites {unknown}; choose from {sorted(SUITES)}")
    suites = {}
    for name in names:
        suites[name] = SUITES[name](seed=seed, jobs=jobs)
        if progress:
            for v in suites[name]:
                progress(v)
    return {"seed": seed, "backend": BACKEND, "suites": suites,
            "passed": all(v["passed"] for vs in suites.values() for v in vs)}
