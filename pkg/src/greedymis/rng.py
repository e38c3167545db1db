"""Counter-based reproducible random streams.

Each ``RngStream`` is keyed by ``(master_seed, stream_index)``.  The k-th
64-bit output word (k = 0, 1, ...) is::

    key   = mix64(master_seed ^ mix64(stream_index + GAMMA))
    out_k = mix64(key + (k + 1) * GAMMA)            (mod 2**64)

where ``mix64`` is the SplitMix64 finalizer::

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

and ``GAMMA = 0x9E3779B97F4A7C15``.  All arithmetic is modulo 2**64, so
output is identical on every platform.  Floats in [0, 1) are the top 53
bits of a word scaled by 2**-53.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX_1 = 0xBF58476D1CE4E5B9
MIX_2 = 0x94D049BB133111EB

_U64 = np.uint64


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a Python int."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_2) & MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _U64(30))) * _U64(MIX_1)
    z = (z ^ (z >> _U64(27))) * _U64(MIX_2)
    return z ^ (z >> _U64(31))


def derive_index(*parts: int) -> int:
    """Fold integers into one 64-bit stream index (order sensitive)."""
    h = 0
    for p in parts:
        h = mix64(h ^ mix64((p & MASK64) + GAMMA))
    return h


class RngStream:
    """Reproducible stream of 64-bit words; see module docstring for the recipe."""

    def __init__(self, master_seed: int, stream_index: int = 0):
        self.master_seed = master_seed & MASK64
        self.stream_index = stream_index & MASK64
        self._key = mix64(self.master_seed ^ mix64(self.stream_index + GAMMA))
        self.counter = 0

    def __repr__(self) -> str:
        return (
            f"RngStream(master_seed={self.master_seed}, "
            f"stream_index={self.stream_index}, counter={self.counter})"
        )

    def spawn(self, *parts: int) -> RngStream:
        """Independent child stream; does not advance this stream."""
        return RngStream(self.master_seed, derive_index(self.stream_index, *parts))

    def next_u64(self, size: int) -> np.ndarray:
        """The next ``size`` output words as a uint64 array."""
        if size < 0:
            raise ValueError("size must be non-negative")
        start = self.counter + 1
        self.counter += size
        # (start + i) * GAMMA, computed mod 2**64 without Python-int overflow
        ks = np.arange(size, dtype=_U64) + _U64(start & MASK64)
        with np.errstate(over="ignore"):
            return _mix64_array(_U64(self._key) + ks * _U64(GAMMA))

    def next_int(self) -> int:
        self.counter += 1
        return mix64(self._key + self.counter * GAMMA)

    def random(self, size: int) -> np.ndarray:
        """``size`` doubles uniform on [0, 1)."""
        return (self.next_u64(size) >> _U64(11)).astype(np.float64) * (1.0 / (1 << 53))

    def bounded(self, bounds: np.ndarray) -> np.ndarray:
        """One draw uniform on ``{0, ..., b-1}`` for each entry ``b`` of ``bounds``."""
        bounds = np.asarray(bounds, dtype=np.int64)
        if bounds.size and bounds.min() < 1:
            raise ValueError("bounds must be >= 1")
        if bounds.size and bounds.max() > (1 << 53):
            raise ValueError("bounds above 2**53 are not supported")
        out = np.floor(self.random(bounds.size) * bounds).astype(np.int64)
        # guard the float rounding edge at u -> 1
        return np.minimum(out, bounds - 1)
