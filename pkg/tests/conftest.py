import numpy as np
import pytest

from repboost import Domain, FiniteDistribution, Hypothesis


@pytest.fixture
def line_domain():
    """Eight points on [0, 1] labeled by sign(x - 0.5)."""
    x = (np.arange(8) + 0.5) / 8
    return Domain(x.reshape(-1, 1), np.where(x > 0.5, 1, -1), [[0.0, 1.0]])


@pytest.fixture
def xor_domain():
    X = [[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]]
    return Domain(X, [-1, -1, 1, 1], [[0.0, 1.0], [0.0, 1.0]])


@pytest.fixture
def four_points():
    X = [[0.1], [0.4], [0.6], [0.9]]
    return Domain(X, [-1, -1, 1, 1], [[0.0, 1.0]]), FiniteDistribution.uniform(4)


@pytest.fixture
def stump_half():
    return Hypothesis.stump(0, 0.5, 1)
