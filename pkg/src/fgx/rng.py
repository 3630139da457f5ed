"""Seeded splitmix64 stream, bit-exact across platforms and languages.

Synthetic fixtures are regenerated from seeds rather than shipped, so the
generator must be reproducible anywhere: splitmix64 on a 64-bit state,
floats taken as the top 53 bits over 2^53.
"""

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        """Uniform draw in [0, 1): top 53 bits / 2^53."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.next_float()

    def index(self, n: int) -> int:
        """Uniform draw from range(n)."""
        return min(int(self.next_float() * n), n - 1)
