import math

import numpy as np
import pytest

from repboost import (ConfigurationError, FiniteDistribution, InsufficientSamples, RandomTape,
                      Sample, ThresholdParams, rthreshold, threshold_sample_size)
from repboost.core import ConstantMeasure, TableMeasure
from repboost.rthreshold import draw_cutoff, check_outcome_ok


def test_sample_size_examples():
    # 700 ln 20 / (0.1 * 0.25) = 83880.5036... (50-digit evaluation)
    assert threshold_sample_size(ThresholdParams(0.1, 0.5, 0.05)) == 83_881


def test_unit_plug_in():
    # z = rho = 1 lies outside the open parameter ranges, so evaluate the
    # formula directly: ln(1/delta) = 1 gives the bare constant
    p = ThresholdParams.__new__(ThresholdParams)
    object.__setattr__(p, "z", 1.0)
    object.__setattr__(p, "rho", 1.0)
    object.__setattr__(p, "delta", 1 / math.e)
    assert threshold_sample_size(p) == 700


def test_scale_must_be_positive():
    with pytest.raises(ConfigurationError):
        threshold_sample_size(ThresholdParams(0.1, 0.5, 0.05), scale=0)


@pytest.mark.parametrize("z,rho,delta", [(0, 0.5, 0.01), (0.1, 1.0, 0.01), (0.1, 0.5, 0.1)])
def test_parameter_validation(z, rho, delta):
    with pytest.raises(ConfigurationError):
        ThresholdParams(z, rho, delta)


def test_cutoff_range():
    z = 0.2
    cuts = [draw_cutoff(z, RandomTape(s)) for s in range(2000)]
    assert min(cuts) >= 0.75 * z and max(cuts) < 1.5 * z
    assert np.mean(cuts) == pytest.approx(1.125 * z, rel=0.02)


def _sample(n=1000):
    return Sample.draw(FiniteDistribution.uniform(2), RandomTape(1), length=n)


def test_zero_function_gives_zero():
    for s in range(50):
        assert rthreshold(_sample(), 0.3, ConstantMeasure(0.0), RandomTape(s)).bit == 0


def test_one_function_gives_one():
    for s in range(50):
        assert rthreshold(_sample(), 0.25, ConstantMeasure(1.0), RandomTape(s)).bit == 1


def test_deterministic_for_fixed_inputs():
    phi = TableMeasure([0.0, 1.0])
    a = rthreshold(_sample(), 0.5, phi, RandomTape(3))
    b = rthreshold(_sample(), 0.5, phi, RandomTape(3))
    assert a == b


def test_sample_size_enforced():
    with pytest.raises(InsufficientSamples):
        rthreshold(_sample(100), 0.1, ConstantMeasure(0.0), RandomTape(0),
                   ThresholdParams(0.1, 0.5, 0.05))


def test_check_outcome_ok():
    assert not check_outcome_ok(0.05, 0.1, 1)
    assert not check_outcome_ok(0.2, 0.1, 0)
    assert check_outcome_ok(0.1, 0.1, 0) and check_outcome_ok(0.1, 0.1, 1)
