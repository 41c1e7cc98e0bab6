import math

import numpy as np
import pytest

from repboost import (ConfigurationError, FiniteDistribution, RandomTape, Sample,
                      SamplesExhausted, rejection_input_size, rejection_sample,
                      reweighted_distribution)
from repboost.core import ConstantMeasure, TableMeasure
from repboost.harness import empirical_distribution, tv_distance
from repboost.sampling import rejection_stream


def test_input_size_examples():
    assert rejection_input_size(100, 1 / 16, 1 / math.e) == 12_800
    assert rejection_input_size(1, 1.0, 1 / math.e) == 8
    # ln(1) = 0, clamped to the target count
    assert rejection_input_size(37, 0.5, 1.0) == 37


def test_input_size_validation():
    with pytest.raises(ConfigurationError):
        rejection_input_size(10, 0.1, 0.1, scale=0)
    with pytest.raises(ConfigurationError):
        rejection_input_size(0, 0.1, 0.1)


def test_accept_all_is_identity():
    src = Sample.draw(FiniteDistribution.uniform(6), RandomTape(4), length=500)
    out = rejection_sample(src, 300, ConstantMeasure(1.0), RandomTape(4).derive("c"))
    assert np.array_equal(out.ids(), src.ids()[:300])
    assert out.scanned == 300


def test_reject_all_exhausts():
    src = Sample.draw(FiniteDistribution.uniform(6), RandomTape(4), length=500)
    with pytest.raises(SamplesExhausted):
        rejection_sample(src, 1, ConstantMeasure(0.0), RandomTape(4).derive("c"))


def test_fidelity_small():
    dist = FiniteDistribution([0.1, 0.2, 0.3, 0.4])
    mu = TableMeasure([1.0, 0.25, 0.5, 0.1])
    src = Sample.draw(dist, RandomTape(2).derive("s"))
    out = rejection_sample(src, 50_000, mu, RandomTape(2).derive("c"))
    target = reweighted_distribution(mu, dist)
    assert tv_distance(empirical_distribution(out.ids(), 4), target) < 0.01


def test_stream_matches_eager_sampler():
    dist = FiniteDistribution.uniform(8)
    mu = TableMeasure(np.linspace(0.05, 1, 8))
    eager = rejection_sample(Sample.draw(dist, RandomTape(5)), 2000, mu, RandomTape(6))
    lazy = rejection_stream(Sample.draw(dist, RandomTape(5)), 2000, mu, RandomTape(6))
    assert np.array_equal(lazy.take(2000).ids(), eager.ids())


def test_stream_reports_exhaustion_when_read():
    dist = FiniteDistribution.uniform(4)
    lazy = rejection_stream(Sample.draw(dist, RandomTape(5), length=10), 100,
                            ConstantMeasure(0.5), RandomTape(6))
    part = lazy.take(100)
    with pytest.raises(SamplesExhausted):
        part.ids()


def test_acceptance_count_within_bound():
    """With the sized input, m_target acceptances at density eps occur
    essentially always."""
    eps, m_target = 0.1, 200
    m = rejection_input_size(m_target, eps, 0.01)
    dist = FiniteDistribution.uniform(10)
    mu = TableMeasure([1.0] + [0.0] * 9)  # density exactly 0.1
    for seed in range(20):
        src = Sample.draw(dist, RandomTape(seed), length=m)
        rejection_sample(src, m_target, mu, RandomTape(seed).derive("c"))
