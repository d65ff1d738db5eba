"""Deterministic random streams based on splitmix64.

Per-word substreams are derived statelessly from (master seed, word
ordinal), so batch order, scheduling, and thread count cannot change any
result. The numba kernels reimplement exactly this arithmetic; the two
sides are required to agree bit for bit (see tests).
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """splitmix64 finalizer: a bijective 64-bit scrambler."""
    z &= _MASK64
    z = (z ^ (z >> 30)) * _MIX1 & _MASK64
    z = (z ^ (z >> 27)) * _MIX2 & _MASK64
    return z ^ (z >> 31)


def substream_seed(master_seed: int, ordinal: int) -> int:
    """Stateless per-stream seed for stream `ordinal` under a master seed."""
    return mix64((int(master_seed) & _MASK64) ^ mix64((int(ordinal) + 1) * _GOLDEN & _MASK64))


class SplitMix64:
    """Sequential splitmix64 generator."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return mix64(self._state)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) via 32-bit multiply-shift."""
        if n <= 0:
            raise ValueError("n must be positive")
        return ((self.next_u64() >> 32) * n) >> 32
