"""Boosting configuration and shared sample-size arithmetic."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace
from fractions import Fraction

from .errors import ConfigurationError

_SNAP = 1e-9


def ceil_count(x: float) -> int:
    """Ceiling of a sample-size formula value.

    Values within relative float noise of an integer snap to it, so that
    e.g. ``700 * ln(e)`` yields 700 rather than 701.
    """
    if not math.isfinite(x):
        raise OverflowError(f"sample size formula evaluated to {x}")
    r = round(x)
    if abs(x - r) <= _SNAP * max(1.0, abs(x)):
        return int(r)
    return int(math.ceil(x))


def exact_fraction(x) -> Fraction:
    """Decimal-faithful rational of a parameter (``0.1`` -> ``1/10``)."""
    if isinstance(x, Fraction):
        return x
    return Fraction(repr(float(x))) if isinstance(x, float) else Fraction(x)


def check_period(gamma) -> int:
    """``floor(1/gamma)`` computed on the decimal value of gamma."""
    return math.floor(1 / exact_fraction(gamma))


@dataclass(frozen=True)
class BoostConfig:
    """Experiment parameters and the constants every size formula uses.

    ``rho``, ``eps`` and ``gamma`` are the top-level targets; subroutines
    receive their own values explicitly.  Every sample-size formula is
    multiplied by ``budget_scale`` and by its component multiplier
    (``weak_scale``, ``reject_scale``, ``threshold_scale``).
    """

    rho: float = 0.5
    eps: float = 0.1
    gamma: float = 0.1
    eps0: float = 1 / 16
    c_threshold: float = 700.0
    rejection_factor: float = 8.0
    budget_scale: float = 1.0
    weak_scale: float = 1.0
    reject_scale: float = 1.0
    threshold_scale: float = 1.0
    meta_reject_scale: float = 1.0
    meta_threshold_scale: float = 1.0
    iteration_constant: float = 16.0
    grid_size: int = 32

    def __post_init__(self):
        self.validate()

    def validate(self):
        if not 0 < self.rho < 1:
            raise ConfigurationError(f"rho must be in (0, 1), got {self.rho}")
        if not 0 < self.eps < 1:
            raise ConfigurationError(f"eps must be in (0, 1), got {self.eps}")
        if not 0 < self.gamma < 0.5:
            raise ConfigurationError(f"gamma must be in (0, 1/2), got {self.gamma}")
        if not 0 < self.eps0 < 1:
            raise ConfigurationError("eps0 must be in (0, 1)")
        for name in ("c_threshold", "rejection_factor", "budget_scale", "weak_scale",
                     "reject_scale", "threshold_scale", "meta_reject_scale",
                     "meta_threshold_scale", "iteration_constant"):
            if not getattr(self, name) > 0:
                raise ConfigurationError(f"{name} must be positive")
        if self.grid_size < 1:
            raise ConfigurationError("grid_size must be at least 1")

    def scale(self, component: str) -> float:
        return self.budget_scale * getattr(self, f"{component}_scale")

    def replace(self, **changes) -> "BoostConfig":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return asdict(self)
