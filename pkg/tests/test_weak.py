from functools import partial

import numpy as np
import pytest

from repboost import (FiniteDistribution, Hypothesis, NoWeakHypothesis, OracleStumpLearner,
                      RandomTape, ReplicableStumpLearner, Sample, StumpGrid, exact_error,
                      margin_domain)
from repboost.harness import estimate_replicability
from repboost.weak import (empirical_mistakes, exact_stump_errors, oracle_stump_learner,
                           select_rounded, weak_sample_complexity)

GRID = StumpGrid([[0.25, 0.5, 0.75]])


def test_grid_enumeration_order():
    hs = GRID.hypotheses()
    assert hs[0] == Hypothesis.stump(0, 0.25, -1)
    assert hs[1] == Hypothesis.stump(0, 0.25, 1)
    assert hs[-2:] == [Hypothesis.constant(-1), Hypothesis.constant(1)]
    assert GRID.size == 8


def test_grid_from_ranges_uses_cell_midpoints():
    g = StumpGrid.from_ranges([[0.0, 1.0]], 4)
    assert g.thresholds.tolist() == [[0.125, 0.375, 0.625, 0.875]]


def test_oracle_realizable(line_domain):
    h = oracle_stump_learner(FiniteDistribution.uniform(8), line_domain, GRID, 0.1)
    assert h == Hypothesis.stump(0, 0.5, 1)


def test_oracle_single_atom(line_domain):
    # all mass on x = 0.0625 (label -1): the first hypothesis labeling it -1 wins
    dist = FiniteDistribution(np.eye(8)[0])
    h = oracle_stump_learner(dist, line_domain, GRID, 0.1)
    assert h == Hypothesis.stump(0, 0.25, 1)
    assert exact_error(h, dist, line_domain) == 0.0


def test_xor_has_no_weak_hypothesis(xor_domain):
    grid = StumpGrid.for_domain(xor_domain, 4)
    errs = exact_stump_errors(FiniteDistribution.uniform(4), xor_domain, grid)
    assert np.all(errs == 0.5)
    with pytest.raises(NoWeakHypothesis):
        oracle_stump_learner(FiniteDistribution.uniform(4), xor_domain, grid, 0.3)


def test_total_tie_picks_first():
    for alpha in (0.0, 0.3, 0.99):
        assert select_rounded(np.full(10, 0.3), alpha, 0.025) == 0


def test_rounding_buckets():
    # width 0.1, offset 0.05: 0.14 and 0.16 share bucket [0.05, 0.15)? no: 0.16 is next
    assert select_rounded([0.16, 0.14], 0.5, 0.1) == 1
    assert select_rounded([0.16, 0.151], 0.5, 0.1) == 0


def test_empirical_mistakes_paths_agree(line_domain):
    grid = StumpGrid.for_domain(line_domain, 5)
    rng = np.random.default_rng(0)
    short = rng.integers(0, 8, size=5)   # fewer ids than points: direct count
    long = rng.integers(0, 8, size=50)   # multiplicity path
    for ids in (short, long):
        brute = np.array([np.sum(h.predict(line_domain.features[ids]) != line_domain.labels[ids])
                          for h in grid.hypotheses()])
        assert np.array_equal(empirical_mistakes(ids, line_domain, grid), brute)


def test_sample_complexity_formula():
    # 32 ln(2*8/0.5) / (0.1/4)^2
    assert weak_sample_complexity(0.5, 0.1, 8) == 177_446


def test_replicable_learner_realizable(line_domain):
    learner = ReplicableStumpLearner(line_domain, GRID, 0.1, scale=0.01)
    assert learner.sample_complexity(0.5) <= 2000
    s = Sample.draw(FiniteDistribution.uniform(8), RandomTape(0), length=2000)
    h = learner.fit(s, 0.5, RandomTape(1))
    assert np.all(h.predict(line_domain.features[s.ids()]) == line_domain.labels[s.ids()])


def _fit(learner, rho, sample, tape):
    return learner.fit(sample.take(2000), rho, tape)


def test_replicable_learner_pairs_agree():
    domain, dist, _ = margin_domain(64, 0.1, seed=5)
    learner = ReplicableStumpLearner(domain, StumpGrid.for_domain(domain, 32), 0.1, scale=0.006)
    assert learner.sample_complexity(0.5) <= 2000
    est = estimate_replicability(partial(_fit, learner, 0.5), dist, 200, seed=0)
    assert est.both_failed == 0
    assert est.estimate.passes(0.5)
    assert est.estimate.rate >= 0.5


def test_oracle_learner_object(line_domain):
    learner = OracleStumpLearner(line_domain, GRID, 0.1)
    assert learner.exact and learner.sample_complexity(0.1) == 0
    assert learner.fit_distribution(FiniteDistribution.uniform(8)) == Hypothesis.stump(0, 0.5, 1)
