"""Samples: ordered point ids with a consumption cursor.

A :class:`Sample` is a window ``[start, start + length)`` onto a positional
source.  ``take(n)`` hands out the next ``n`` positions as a child sample and
advances the cursor, so successive fresh requests get disjoint, increasing
ranges.  Items are produced on demand; for i.i.d. draws the item at a position
is a pure function of the data tape and the position, so when it gets
materialized never changes its value.

In compact mode (used for sequential sources, where skipping positions is
as costly as reading them) the next fresh request starts right after the
last item the previous child actually read, not after its whole
reservation.  Ranges stay disjoint and increasing, and each boundary is a
stopping time of the read sequence, so items after it are still fresh
i.i.d. draws.
"""

from __future__ import annotations

import numpy as np

from .core import FiniteDistribution
from .errors import InsufficientSamples
from .tape import RandomTape

UNBOUNDED = 1 << 62
CHUNK = 1 << 16


class ArraySource:
    def __init__(self, ids):
        self.ids = np.asarray(ids, dtype=np.int64)
        self.ids.setflags(write=False)

    def __len__(self):
        return self.ids.size

    def get(self, lo, hi):
        return self.ids[lo:hi]


class DrawSource:
    """I.i.d. draws from a finite distribution, position ``i`` from tape word ``i``."""

    def __init__(self, dist: FiniteDistribution, tape: RandomTape):
        self.dist = dist
        self.tape = tape

    def __len__(self):
        return UNBOUNDED

    def get(self, lo, hi):
        return self.dist.ids_from_uniforms(self.tape.uniforms(lo, hi))


class Sample:
    def __init__(self, source, length=None, start=0, compact=False):
        self.source = source
        cap = len(source) - start
        self.length = cap if length is None else int(length)
        if self.length < 0 or self.length > cap:
            raise ValueError("sample window exceeds its source")
        self.start = int(start)
        self.cursor = 0
        self.compact = compact
        self.high_water = 0
        self._child = None

    @classmethod
    def from_ids(cls, ids) -> "Sample":
        return cls(ArraySource(ids))

    @classmethod
    def draw(cls, dist: FiniteDistribution, tape: RandomTape, length=None) -> "Sample":
        """I.i.d. sample from ``dist``; unbounded unless ``length`` is given."""
        return cls(DrawSource(dist, tape), length)

    def __len__(self):
        return self.length

    def _settle(self):
        if self._child is not None:
            child, self._child = self._child, None
            self.cursor = child.start - self.start + child.high_water
            release = getattr(self.source, "release", None)
            if release is not None:
                release(self.start + self.cursor)

    @property
    def remaining(self) -> int:
        self._settle()
        return self.length - self.cursor

    @property
    def consumed(self) -> int:
        self._settle()
        return self.cursor

    def take(self, n: int) -> "Sample":
        """Reserve the next ``n`` unconsumed items as a fresh sample."""
        n = int(n)
        if n < 0:
            raise ValueError("cannot take a negative number of items")
        if n > self.remaining:
            raise InsufficientSamples(n, self.remaining)
        child = Sample(self.source, n, self.start + self.cursor)
        if self.compact:
            self._child = child
        else:
            self.cursor += n
        return child

    def require(self, n: int, what="sample"):
        if self.length < n:
            raise InsufficientSamples(n, self.length, what)

    def ids(self, lo=0, hi=None) -> np.ndarray:
        hi = self.length if hi is None else min(hi, self.length)
        lo = max(0, lo)
        if hi <= lo:
            return np.empty(0, dtype=np.int64)
        self.high_water = max(self.high_water, hi)
        return self.source.get(self.start + lo, self.start + hi)

    def chunks(self, size=CHUNK):
        for lo in range(0, self.length, size):
            yield self.ids(lo, lo + size)

    def __repr__(self):
        return f"Sample(length={self.length}, consumed={self.cursor})"
