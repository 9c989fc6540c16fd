"""Self-contained 64-bit xorshift* generator.

The instance generator and the sampled structure checks must reproduce
bit-for-bit across platforms and implementations, so no stdlib RNG is used.
State update: x ^= x >> 12; x ^= x << 25; x ^= x >> 27; output is
x * 2685821657736338717 mod 2^64 (Marsaglia's xorshift64star constants).
"""

from __future__ import annotations

MASK = (1 << 64) - 1
MULT = 2685821657736338717


class Xorshift:
    def __init__(self, seed: int):
        # state must be nonzero; fold the seed into 64 bits
        self.state = (seed & MASK) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK
        x ^= x >> 27
        self.state = x
        return (x * MULT) & MASK

    def below(self, n: int) -> int:
        """Uniform-enough draw in [0, n) (modulo bias is irrelevant for the
        tiny ranges used here, and keeping it branch-free keeps the stream
        reproducible)."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u64() % n

    def randint(self, lo: int, hi: int) -> int:
        """Inclusive range."""
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def sample(self, seq, k: int) -> list:
        pool = list(seq)
        out = []
        for _ in range(min(k, len(pool))):
            out.append(pool.pop(self.below(len(pool))))
        return out

    def chance(self, num: int, den: int) -> bool:
        return self.below(den) < num
