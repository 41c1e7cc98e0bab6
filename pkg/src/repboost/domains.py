"""Synthetic margin domains and domain file IO."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .core import Domain, FiniteDistribution
from .errors import ConfigurationError
from .weak import StumpGrid


def stumps_for_margin(margin: float) -> int:
    """Largest odd vote size ``J`` with ``1/J >= 2*margin``."""
    if not 0 < margin <= 0.5:
        raise ConfigurationError(f"margin must be in (0, 1/2], got {margin}")
    j = int(math.floor(1.0 / (2.0 * margin) + 1e-9))
    return j if j % 2 else j - 1


def margin_domain(size: int, margin: float = 0.1, dim: int = 2, seed: int = 0,
                  grid_size: int = 32, probs: str = "uniform", n_stumps: int | None = None):
    """Random domain labeled by a majority of ``J`` grid stumps.

    With ``J`` odd the vote average ``F`` satisfies ``|F| >= 1/J >= 2*margin``
    everywhere, so under any reweighting ``D'`` we have
    ``E_D'[f F] >= 2*margin`` and one of the ``J`` stumps (all on the
    default grid) has error at most ``1/2 - margin``.

    Returns ``(domain, dist, stumps)``.
    """
    if size < 1 or dim < 1:
        raise ConfigurationError("size and dim must be positive")
    j = stumps_for_margin(margin) if n_stumps is None else int(n_stumps)
    if j < 1 or j % 2 == 0 or 1.0 / j < 2 * margin - 1e-12:
        raise ConfigurationError(f"{j} stumps cannot certify margin {margin}")
    if j > 2 * dim * grid_size:
        raise ConfigurationError("not enough grid stumps for the requested margin")
    rng = np.random.default_rng(seed)
    ranges = np.tile([0.0, 1.0], (dim, 1))
    grid = StumpGrid.from_ranges(ranges, grid_size, include_constants=False)
    # distinct (feature, threshold) pairs, random polarity
    cells = rng.choice(dim * grid_size, size=j, replace=False)
    stumps = [grid.hypothesis(2 * int(c) + int(rng.integers(2))) for c in sorted(cells)]

    X = rng.random((size, dim))
    votes = sum(h.margin(X) for h in stumps)
    labels = np.where(votes > 0, 1, -1)
    domain = Domain(X, labels, ranges)
    if probs == "uniform":
        dist = FiniteDistribution.uniform(size)
    elif probs == "random":
        dist = FiniteDistribution.normalized(rng.random(size) + 0.5)
    else:
        raise ConfigurationError(f"probs must be 'uniform' or 'random', got {probs!r}")
    return domain, dist, stumps


def domain_to_json(domain: Domain, dist: FiniteDistribution) -> dict:
    return {"points": domain.features.tolist(),
            "labels": [int(v) for v in domain.labels],
            "probs": dist.probs.tolist(),
            "ranges": domain.ranges.tolist()}


def save_domain(path, domain: Domain, dist: FiniteDistribution):
    Path(path).write_text(json.dumps(domain_to_json(domain, dist), indent=1) + "\n")


def domain_from_json(doc) -> tuple[Domain, FiniteDistribution]:
    try:
        points, labels, probs = doc["points"], doc["labels"], doc["probs"]
    except (KeyError, TypeError) as e:
        raise ConfigurationError(f"domain document lacks field {e}") from None
    if not (len(points) == len(labels) == len(probs)):
        raise ConfigurationError("points, labels and probs must have equal length")
    try:
        domain = Domain(points, labels, doc.get("ranges"))
        dist = FiniteDistribution(probs)
    except ValueError as e:
        raise ConfigurationError(str(e)) from None
    return domain, dist


def load_domain(path) -> tuple[Domain, FiniteDistribution]:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"{path}: invalid JSON ({e})") from None
    return domain_from_json(doc)


def load_dataset(path) -> tuple[Domain, FiniteDistribution]:
    """Rows of a CSV dataset as a domain under the uniform distribution.

    The last column is the label in {-1, +1}; a non-numeric first row is
    taken as a header.
    """
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if rows:
        try:
            float(rows[0][0])
        except ValueError:
            rows = rows[1:]
    if not rows:
        raise ConfigurationError(f"{path}: no data rows")
    try:
        data = np.array([[float(v) for v in r] for r in rows])
    except ValueError as e:
        raise ConfigurationError(f"{path}: {e}") from None
    if data.ndim != 2 or data.shape[1] < 2:
        raise ConfigurationError(f"{path}: need feature columns and a label column")
    labels = data[:, -1]
    if not np.all(np.isin(labels, (-1.0, 1.0))):
        raise ConfigurationError(f"{path}: labels must be -1 or +1")
    try:
        domain = Domain(data[:, :-1], labels.astype(np.int64))
    except ValueError as e:
        raise ConfigurationError(str(e)) from None
    return domain, FiniteDistribution.uniform(len(rows))


def load_any(path) -> tuple[Domain, FiniteDistribution]:
    return load_dataset(path) if str(path).lower().endswith(".csv") else load_domain(path)
