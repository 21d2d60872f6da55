"""Deterministic sampling of small rationals.

All randomness goes through SplitMix64 (Steele, Lea and Flood 2014) so a
given seed produces the same draws on every platform and in every
implementation that follows the same recipe:

    state += 0x9E3779B97F4A7C15
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    out = z ^ (z >> 31)               (all arithmetic mod 2**64)

``choice(seq)`` returns ``seq[out % len(seq)]``.
"""
from __future__ import annotations

from fractions import Fraction

from .core import Matrix, rank

MASK = (1 << 64) - 1

# pool for free parameters and basis-change entries
SMALL_RATIONALS = (
    Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2), Fraction(2), Fraction(-2), Fraction(3),
)


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.state = seed & MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def choice(self, seq):
        return seq[self.next() % len(seq)]


def stream(seed: int, index: int) -> SplitMix64:
    """Independent generator for item ``index`` of a seeded batch."""
    return SplitMix64(seed * 1_000_003 + index)


def small_rational(rng: SplitMix64, nonzero: bool = False) -> Fraction:
    pool = SMALL_RATIONALS if nonzero else (Fraction(0),) + SMALL_RATIONALS
    return rng.choice(pool)


def random_invertible(n: int, rng: SplitMix64) -> Matrix:
    """Random invertible n x n matrix with entries in {0} + SMALL_RATIONALS.

    Redraws until the matrix has full rank.
    """
    while True:
        rows = [[small_rational(rng) for _ in range(n)] for _ in range(n)]
        if rank(rows) == n:
            return Matrix(rows)
