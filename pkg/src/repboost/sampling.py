"""Rejection sampling from a reweighted distribution.

Candidates are scanned in sample order; candidate ``i`` is accepted iff the
``i``-th uniform of the coin tape is at most ``mu(x_i)``.  The coin tape is
dedicated to one sampler call, so how many coins a call consumes (which
depends on the data) never shifts randomness seen by any other subroutine.
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels
from .config import ceil_count
from .errors import ConfigurationError, SamplesExhausted
from .sample import Sample
from .tape import RandomTape

MIN_CHUNK = 1024
MAX_CHUNK = 1 << 18


def rejection_input_size(m_target: int, eps: float, delta: float, scale: float = 1.0,
                         factor: float = 8.0) -> int:
    """Inputs needed so ``m_target`` acceptances succeed w.p. ``1 - delta``.

    ``max(ceil(scale * 8 ln(1/delta) m_target / eps), m_target)``; the clamp
    matters when ``delta = 1`` or the scale is small, since fewer inputs
    than targets can never succeed.
    """
    if m_target < 1:
        raise ConfigurationError("m_target must be at least 1")
    if not 0 < eps <= 1:
        raise ConfigurationError(f"eps must be in (0, 1], got {eps}")
    if not 0 < delta <= 1:
        raise ConfigurationError(f"delta must be in (0, 1], got {delta}")
    if not scale > 0:
        raise ConfigurationError("scale must be positive")
    m = ceil_count(scale * factor * math.log(1.0 / delta) * m_target / eps)
    return max(m, int(m_target))


class RejectionSource:
    """Accepted candidates of a scan over ``parent``, produced on demand."""

    def __init__(self, parent: Sample, mu, coins: RandomTape, limit: int):
        self.parent = parent
        self.mu = mu
        self.coins = coins
        self.limit = int(limit)
        self.scanned = 0
        self._buf = np.empty(0, dtype=np.int64)
        self._base = 0     # accepted items before _buf[0] were released
        self._n = 0        # accepted so far, including released ones

    def __len__(self):
        return self.limit

    def _append(self, ids):
        held = self._n - self._base
        need = held + ids.size
        if need > self._buf.size:
            grown = np.empty(max(need, 2 * self._buf.size, 1024), dtype=np.int64)
            grown[:held] = self._buf[:held]
            self._buf = grown
        self._buf[held:need] = ids
        self._n += ids.size

    def release(self, upto: int):
        """Forget accepted items before position ``upto``; they are never read again."""
        upto = min(int(upto), self._n)
        if upto > self._base:
            held = self._n - upto
            self._buf[:held] = self._buf[upto - self._base:self._n - self._base]
            self._base = upto

    def fill(self, count: int):
        """Scan until ``count`` candidates are accepted or the input runs out."""
        count = min(count, self.limit)
        while self._n < count:
            left = len(self.parent) - self.scanned
            if left <= 0:
                raise SamplesExhausted(
                    f"rejection sampler accepted {self._n} of {count} required "
                    f"after scanning all {len(self.parent)} inputs")
            need = count - self._n
            # size the chunk from the acceptance rate so far; over-reading is
            # what a compact parent pays for
            rate = self._n / self.scanned if self._n else 1.0
            size = min(left, max(MIN_CHUNK, min(MAX_CHUNK, int(need / rate * 1.05) + 64)))
            lo = self.scanned
            ids = self.parent.ids(lo, lo + size)
            vals = np.asarray(self.mu(ids), dtype=np.float64)
            u = self.coins.uniforms(lo, lo + size)
            hits, seen = kernels.accept_scan(vals, u, need)
            self._append(ids[hits])
            self.scanned += seen

    def get(self, lo, hi):
        if lo < self._base:
            raise ValueError("accepted items before the released prefix are gone")
        self.fill(hi)
        return self._buf[lo - self._base:hi - self._base].copy()

    @property
    def accepted(self) -> int:
        return self._n


def rejection_sample(sample: Sample, m_target: int, mu, tape: RandomTape) -> Sample:
    """First ``m_target`` accepted points of ``sample`` under ``mu``.

    Raises :class:`SamplesExhausted` when the sample holds fewer acceptances.
    The returned sample exposes the scan length as ``.scanned``.
    """
    src = RejectionSource(sample, mu, tape, m_target)
    src.fill(m_target)
    out = Sample.from_ids(src.get(0, m_target))
    out.scanned = src.scanned
    return out


def rejection_stream(sample: Sample, m_target: int, mu, tape: RandomTape) -> Sample:
    """Lazy form of :func:`rejection_sample`.

    Produces exactly the same items, but scans only as far as the consumer
    reads, so exhaustion is reported when a read cannot be served rather
    than up front.  The stream is compact: a fresh request starts after the
    last item read (see :mod:`repboost.sample`).
    """
    return Sample(RejectionSource(sample, mu, tape, m_target), compact=True)
