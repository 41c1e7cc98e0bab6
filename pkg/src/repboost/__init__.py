"""Replicable boosting with a shared random tape.

Two runs given the same :class:`RandomTape` and independent samples return
the same hypothesis with high probability.  The main entry points are
:func:`rthreshold`, :func:`rejection_sample`, :func:`rboost_star` and
:func:`rmetaboost`; :mod:`repboost.harness` holds the Monte Carlo checks.
"""

from .config import BoostConfig
from .core import (Domain, FiniteDistribution, Hypothesis, MajorityVote, TableMeasure,
                   density, exact_error, reweighted_distribution)
from .domains import load_any, load_domain, margin_domain, save_domain
from .errors import (ConfigurationError, DomainMismatch, InsufficientSamples,
                     IterationCapExceeded, NoWeakHypothesis, PreconditionUnmet,
                     RepboostError, SamplesExhausted, ZeroDensity)
from .kernels import BACKEND
from .rboost_star import mu_star, rboost_star
from .rmetaboost import MetaState, compute_T, rmetaboost
from .report import IterationRecord, RunReport
from .rthreshold import ThresholdParams, rthreshold, threshold_sample_size
from .sample import Sample
from .sampling import rejection_input_size, rejection_sample
from .tape import RandomTape
from .weak import OracleStumpLearner, ReplicableStumpLearner, StumpGrid

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BoostConfig", "ConfigurationError", "Domain", "DomainMismatch",
    "FiniteDistribution", "Hypothesis", "InsufficientSamples", "IterationCapExceeded",
    "IterationRecord", "MajorityVote", "MetaState", "NoWeakHypothesis",
    "OracleStumpLearner", "PreconditionUnmet", "RandomTape", "ReplicableStumpLearner",
    "RepboostError", "RunReport", "Sample", "SamplesExhausted", "StumpGrid",
    "TableMeasure", "ThresholdParams", "ZeroDensity", "compute_T", "density",
    "exact_error", "load_any", "load_domain", "margin_domain", "mu_star",
    "rboost_star", "rejection_input_size", "rejection_sample", "reweighted_distribution",
    "rmetaboost", "rthreshold", "save_domain", "threshold_sample_size",
]
