"""Shared randomness: hierarchical, counter-based random tapes.

A :class:`RandomTape` is an immutable ``(root_seed, path)`` value.  Its stream
is Philox-4x64 keyed by the first 128 bits of a SHA-256 digest of the
canonical encoding of ``(root_seed, path)``.  Philox is counter based, so word
``i`` of a stream can be read directly without generating words ``0..i-1``;
every draw is a pure function of ``(root_seed, path, index)``.

Uniform reals use the fixed 53-bit construction ``(word >> 11) * 2**-53``,
which is exact in IEEE double arithmetic and therefore platform independent.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from functools import cached_property

import numpy as np

_DOMAIN_TAG = b"repboost/tape/v1"
_TWO_M53 = 1.0 / 9007199254740992.0
_U64 = (1 << 64) - 1


def _encode(root_seed: int, path) -> bytes:
    parts = [_DOMAIN_TAG, struct.pack("<Q", root_seed)]
    for tag, counter in path:
        raw = tag.encode("utf-8")
        parts.append(struct.pack("<I", len(raw)))
        parts.append(raw)
        parts.append(struct.pack("<q", counter))
    return b"".join(parts)


@dataclass(frozen=True)
class RandomTape:
    root_seed: int
    path: tuple = ()

    def __post_init__(self):
        if not isinstance(self.root_seed, (int, np.integer)) or not 0 <= self.root_seed <= _U64:
            raise ValueError(f"root_seed must be a 64-bit unsigned integer, got {self.root_seed!r}")
        object.__setattr__(self, "root_seed", int(self.root_seed))
        object.__setattr__(self, "path", tuple((str(t), int(c)) for t, c in self.path))

    def derive(self, tag: str, counter: int = 0) -> "RandomTape":
        """Child tape one frame below this one."""
        return RandomTape(self.root_seed, self.path + ((str(tag), int(counter)),))

    @cached_property
    def key(self) -> tuple[int, int]:
        digest = hashlib.sha256(_encode(self.root_seed, self.path)).digest()
        return struct.unpack("<QQ", digest[:16])

    def _at(self, start: int):
        """Bit generator positioned at word ``start`` (Philox emits 4 words per block)."""
        bg = np.random.Philox(key=np.array(self.key, dtype=np.uint64))
        block, skip = divmod(start, 4)
        if block:
            bg.advance(block)
        if skip:
            bg.random_raw(skip)
        return bg

    def raw(self, start: int, stop: int) -> np.ndarray:
        """64-bit words at stream positions ``start..stop-1``."""
        if stop <= start:
            return np.empty(0, dtype=np.uint64)
        return np.asarray(self._at(start).random_raw(stop - start), dtype=np.uint64)

    def uniforms(self, start: int, stop: int) -> np.ndarray:
        """Uniform doubles in ``[0, 1)`` at positions ``start..stop-1``.

        numpy's double generator uses the same ``(word >> 11) * 2**-53``
        construction (checked in the tests), one word per double.
        """
        if stop <= start:
            return np.empty(0, dtype=np.float64)
        return np.random.Generator(self._at(start)).random(stop - start)

    def uniform(self, index: int = 0) -> float:
        return float(self.uniforms(index, index + 1)[0])

    def stream(self) -> "TapeStream":
        return TapeStream(self)

    def label(self) -> str:
        frames = "/".join(f"{t}:{c}" for t, c in self.path)
        return f"{self.root_seed}/{frames}" if frames else str(self.root_seed)


def derive_stream(tape: RandomTape, tag: str, counter: int) -> RandomTape:
    return tape.derive(tag, counter)


class TapeStream:
    """Sequential reader over a tape, for consumers that draw in order."""

    def __init__(self, tape: RandomTape):
        self.tape = tape
        self.position = 0

    def uniforms(self, n: int) -> np.ndarray:
        out = self.tape.uniforms(self.position, self.position + n)
        self.position += n
        return out

    def uniform(self) -> float:
        return float(self.uniforms(1)[0])

    def raw(self, n: int) -> np.ndarray:
        out = self.tape.raw(self.position, self.position + n)
        self.position += n
        return out
