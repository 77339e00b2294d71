"""Deterministic pseudo-random generator used everywhere randomness is needed.

The library must produce bit-identical output across platforms and Python
versions, so it does not rely on ``random`` or NumPy bit generators.  The
generator below is the splitmix64 sequence:

    state  <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z      <- state
    z      <- ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z      <- ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output <- z XOR (z >> 31)

Uniform indices in ``range(n)`` are drawn as ``((output >> 11) * n) >> 53``,
i.e. the top 53 bits scaled to ``n`` with integer arithmetic only.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Tiny 64-bit PRNG with a fixed, documented update rule."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def index(self, n: int) -> int:
        """Uniform integer in ``range(n)``; n must be positive."""
        if n <= 0:
            raise ValueError("n must be positive")
        return ((self.next_u64() >> 11) * n) >> 53

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle driven by this generator."""
        for i in range(len(items) - 1, 0, -1):
            j = self.index(i + 1)
            items[i], items[j] = items[j], items[i]
