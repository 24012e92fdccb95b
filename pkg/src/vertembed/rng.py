"""Portable deterministic random numbers.

SplitMix64 is used everywhere randomness is needed: it is seedable, fast,
and produces identical streams on every platform and Python build, which the
reproducibility guarantees of the CLI and the experiment harness rely on.
Bounded sampling uses the multiply-shift reduction, so no rejection loop is
involved and the number of draws per request is fixed.
"""

from __future__ import annotations

import hashlib

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """64-bit SplitMix64 generator with rejection-free bounded sampling."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via Lemire's multiply-shift."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return (self.next_u64() * bound) >> 64

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in the inclusive range [low, high]."""
        if high < low:
            raise ValueError("empty range")
        return low + self.below(high - low + 1)

    def choice(self, items):
        """Uniformly chosen element of a non-empty sequence."""
        if not items:
            raise ValueError("cannot choose from an empty sequence")
        return items[self.below(len(items))]


def derive_seed(seed: int, label: str) -> int:
    """Stable substream seed for (seed, label), identical across platforms.

    Used to give every model / trial its own decorrelated stream so that
    per-item results do not depend on processing order.
    """
    digest = hashlib.sha256(f"{seed}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")
