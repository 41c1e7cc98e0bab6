import math

import numpy as np
import pytest

from repboost import (BoostConfig, FiniteDistribution, Hypothesis, MetaState, NoWeakHypothesis,
                      OracleStumpLearner, RandomTape, Sample, StumpGrid, compute_T,
                      margin_domain, rmetaboost)
from repboost.core import all_ids
from repboost.harness import (ORACLE_META_SCALES, cap_coherence_audit, exp_weight_audit,
                              high_density_audit, smoke_setup)
from repboost.rmetaboost import CapIndicator, final_state, meta_budget


def test_compute_T_examples():
    assert compute_T(0.1) == 24
    assert compute_T(2 / math.e ** 8) == 64
    assert compute_T(1 - 1e-9) == 6


def test_compute_T_range():
    with pytest.raises(Exception):
        compute_T(1.0)


@pytest.fixture
def two_points():
    from repboost import Domain
    # x = 0 has label +1, x = 1 has label -1; h = +1 misclassifies x = 1
    return Domain([[0.0], [1.0]], [1, -1], [[0.0, 1.0]])


def test_counter_first_step(two_points):
    s = MetaState(two_points)
    h = Hypothesis.constant(1)
    assert s.t == 1 and s.c == 0
    assert s.M([0, 1]).tolist() == [0, 0]
    assert s.N_next(h, [0, 1]).tolist() == [0, 1]


def test_counter_step_without_cap_raise(two_points):
    s = MetaState(two_points).step(Hypothesis.constant(1), 0)
    assert s.c == 0
    assert s.M([0, 1]).tolist() == [0, 0]
    assert s.mu([0, 1]).tolist() == [1.0, 1.0]


def test_counter_step_with_cap_raise(two_points):
    s0 = MetaState(two_points)
    s = s0.step(Hypothesis.constant(1), 1)
    assert s.c == 1
    assert s.M([1, 0]).tolist() == [1, 0]
    assert s.mu([1, 0]).tolist() == [1.0, math.exp(-1)]
    # value semantics: the earlier state is unchanged
    assert s0.c == 0 and s0.M([1]).tolist() == [0]


def test_cap_indicator(two_points):
    s = MetaState(two_points)
    phi = CapIndicator(s, Hypothesis.constant(1))
    assert phi(np.array([0, 1])).tolist() == [0.0, 1.0]


def test_meta_budget_shape():
    learner = OracleStumpLearner(None, StumpGrid([[0.5]]), 0.1)
    b = meta_budget(0.5, 0.1, 0.1, learner, BoostConfig(), "exact")
    assert b.rounds == 24
    assert b.inner_rho == pytest.approx(0.5 / 144, rel=1e-15)
    assert b.reject_samples == 0
    assert b.threshold.z == pytest.approx(0.1 / 16, rel=1e-15)
    assert b.threshold.rho == pytest.approx(0.5 / 72, rel=1e-15)
    assert b.threshold.delta == pytest.approx(0.5 / 576, rel=1e-15)


def _oracle(domain, dist, rounds=None, seed=0, eps=0.1):
    cfg = BoostConfig(eps=eps, gamma=0.1, rho=0.5, **ORACLE_META_SCALES)
    learner = OracleStumpLearner(domain, StumpGrid.for_domain(domain, 32), 0.1)
    return rmetaboost(Sample.draw(dist, RandomTape(seed)), learner, 0.5, eps, 0.1,
                      RandomTape(seed).derive("algo"), domain=domain, dist=dist, config=cfg,
                      inner_termination="exact", rounds=rounds)


def test_single_round_returns_inner_hypothesis():
    domain, dist, _ = margin_domain(32, 0.1, seed=2)
    H, rep = _oracle(domain, dist, rounds=1)
    assert len(H.members) == 1
    assert np.array_equal(H.predict(domain.features), H.members[0].predict(domain.features))


def test_oracle_run_properties():
    domain, dist, _ = margin_domain(64, 0.1, seed=6)
    H, rep = _oracle(domain, dist)
    assert rep.iterations == 24 and len(rep.bits) == 24
    assert rep.error <= 0.1
    inner_cap = math.ceil(16 / (1 / 16 * 0.01))
    assert rep.weak_calls == sum(r.iterations for r in rep.inner) <= 24 * inner_cap
    assert all(0 <= r.density <= 1 for r in rep.records)
    consumed = [r.consumed for r in rep.records]
    assert consumed == sorted(consumed)
    assert high_density_audit(rep, 0.1).passed
    assert cap_coherence_audit(rep, domain, dist).passed
    audit = exp_weight_audit(rep, domain, dist, 1 / 16)
    assert audit.passed and audit.bound == pytest.approx(math.e ** 3)


def test_final_state_matches_counters():
    domain, dist, _ = margin_domain(32, 0.1, seed=7)
    H, rep = _oracle(domain, dist, rounds=3)
    state = final_state(rep, domain)
    assert state.c == sum(rep.bits)
    assert np.all(state.M(all_ids(domain.n)) <= state.c)


def test_inner_failure_is_annotated(xor_domain):
    learner = OracleStumpLearner(xor_domain, StumpGrid.for_domain(xor_domain, 4), 0.3)
    with pytest.raises(NoWeakHypothesis) as info:
        rmetaboost(Sample.from_ids([]), learner, 0.5, 0.1, 0.3, RandomTape(0),
                   domain=xor_domain, dist=FiniteDistribution.uniform(4),
                   config=BoostConfig(gamma=0.3, **ORACLE_META_SCALES),
                   inner_termination="exact")
    assert info.value.context == [(1, "weak"), (1, "inner")]


def test_sampled_pipeline_runs_and_replays():
    algo, dist = smoke_setup()
    outs = [algo(Sample.draw(dist, RandomTape(1)), RandomTape(2)) for _ in range(2)]
    (H1, r1), (H2, r2) = outs
    assert H1 == H2 and r1.to_json() == r2.to_json()
    assert r1.iterations == compute_T(0.5) == 12
    assert r1.consumed > 0
