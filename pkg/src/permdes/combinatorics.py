"""Exact counting quantities of S_n under the fixed-point distance."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def _derangement_table(m: int) -> tuple[int, ...]:
    table = [1, 0]
    for k in range(2, m + 1):
        table.append((k - 1) * (table[k - 1] + table[k - 2]))
    return tuple(table[: m + 1])


def derangements(m: int) -> int:
    """Number of fixed-point-free permutations of ``m`` letters."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return _derangement_table(m)[m]


@dataclass(frozen=True)
class RencontresTable:
    """``w[k]`` counts permutations of ``n`` letters with exactly ``k`` fixed points."""

    n: int
    w: tuple[int, ...]

    def sphere_sizes(self) -> tuple[int, ...]:
        """``v[i] = w[n - i]``: permutations at distance ``i`` from a fixed centre."""
        return tuple(reversed(self.w))


@lru_cache(maxsize=None)
def rencontres(n: int) -> RencontresTable:
    if n < 1:
        raise ValueError("n must be at least 1")
    return RencontresTable(n, tuple(math.comb(n, k) * derangements(n - k) for k in range(n + 1)))


def distance_distribution(n: int) -> tuple[Fraction, ...]:
    """Probability that a uniform permutation lies at distance ``i`` from the identity."""
    v = rencontres(n).sphere_sizes()
    total = math.factorial(n)
    return tuple(Fraction(c, total) for c in v)


def space_moment(n: int, i: int) -> Fraction:
    """Exact ``sum_j (v_j / n!) j**i`` over the whole of S_n."""
    if i < 0:
        raise ValueError("moment order must be non-negative")
    v = rencontres(n).sphere_sizes()
    return Fraction(sum(c * j**i for j, c in enumerate(v)), math.factorial(n))
