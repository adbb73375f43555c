"""SplitMix64 random stream used wherever a result must be reproducible.

numpy's ``Generator`` methods do not promise a stable stream across
releases, so masks, library subsamples and lattice jitter are drawn from
this small, fully specified generator instead.  The recurrence is
Steele, Lea & Flood's SplitMix64::

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

all arithmetic modulo 2**64.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """Deterministic 64-bit generator, identical on every platform."""

    def __init__(self, seed: int):
        self.state = int(seed) & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Double in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, n: int) -> int:
        """Unbiased integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def uniforms(self, size: int) -> np.ndarray:
        return np.array([self.uniform() for _ in range(size)], dtype=np.float64)

    def sample_without_replacement(self, n: int, k: int) -> np.ndarray:
        """k distinct integers from range(n), returned sorted ascending.

        Partial Fisher-Yates over a sparse swap table, so memory is O(k).
        """
        if not 0 <= k <= n:
            raise ValueError(f"cannot draw {k} items from {n}")
        swaps: dict[int, int] = {}
        out = np.empty(k, dtype=np.int64)
        for i in range(k):
            j = i + self.below(n - i)
            vi = swaps.get(i, i)
            vj = swaps.get(j, j)
            swaps[j] = vi
            out[i] = vj
        out.sort()
        return out
