"""Replicable threshold check.

Decides whether ``E[phi(X)]`` exceeds ``z`` by comparing the empirical mean
against a cutoff drawn uniformly from ``[3z/4, 3z/2]`` with shared randomness.
Two runs on independent samples agree unless the cutoff lands between their
estimates, which is unlikely once the estimates concentrate to within a
``rho`` fraction of the cutoff range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import ceil_count
from .errors import ConfigurationError
from .sample import Sample
from .tape import RandomTape

DEFAULT_CONSTANT = 700.0


@dataclass(frozen=True)
class ThresholdParams:
    z: float
    rho: float
    delta: float

    def __post_init__(self):
        if not 0 < self.z < 1:
            raise ConfigurationError(f"z must be in (0, 1), got {self.z}")
        if not 0 < self.rho < 1:
            raise ConfigurationError(f"rho must be in (0, 1), got {self.rho}")
        # small slack: delta is often computed as rho/8 in floating point
        if not 0 < self.delta <= self.rho / 8 * (1 + 1e-12):
            raise ConfigurationError(f"delta must be in (0, rho/8], got {self.delta}")


class ThresholdResult(NamedTuple):
    bit: int
    mean: float
    cutoff: float


def threshold_sample_size(p: ThresholdParams, scale: float = 1.0,
                          constant: float = DEFAULT_CONSTANT) -> int:
    """``ceil(scale * 700 ln(1/delta) / (z rho^2))``."""
    if not scale > 0:
        raise ConfigurationError("scale must be positive")
    return ceil_count(scale * constant * math.log(1.0 / p.delta) / (p.z * p.rho ** 2))


def draw_cutoff(z: float, tape: RandomTape) -> float:
    """Cutoff from the first 53-bit uniform of ``tape``, mapped onto [3z/4, 3z/2]."""
    u = tape.uniform(0)
    lo = 0.75 * z
    return lo + u * lo


def sample_mean(sample: Sample, phi) -> float:
    if len(sample) == 0:
        raise ValueError("cannot take the mean of an empty sample")
    # fixed chunking keeps the summation order, hence the result, deterministic
    partial = [float(np.sum(np.asarray(phi(ids), dtype=np.float64)))
               for ids in sample.chunks()]
    return math.fsum(partial) / len(sample)


def rthreshold(sample: Sample, z: float, phi, tape: RandomTape,
               params: ThresholdParams | None = None, scale: float = 1.0,
               constant: float = DEFAULT_CONSTANT) -> ThresholdResult:
    """Return ``1{mean phi(S) > z0}`` with ``z0`` drawn from the shared tape.

    When ``params`` is given, the sample must meet its size requirement.
    """
    if not 0 < z < 1:
        raise ConfigurationError(f"z must be in (0, 1), got {z}")
    if params is not None:
        sample.require(threshold_sample_size(params, scale, constant), "rthreshold")
    z0 = draw_cutoff(z, tape)
    mean = sample_mean(sample, phi)
    return ThresholdResult(int(mean > z0), mean, z0)


def check_outcome_ok(true_mean: float, z: float, bit: int) -> bool:
    """Whether a check's bit is consistent with its correctness guarantee.

    Fails only when the mean is at most z/2 and the bit is 1, or the mean is
    at least 2z and the bit is 0; in between every bit is acceptable.
    """
    if true_mean <= z / 2 and bit == 1:
        return False
    if true_mean >= 2 * z and bit == 0:
        return False
    return True
