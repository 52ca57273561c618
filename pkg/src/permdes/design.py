"""Distance frequencies of permutation sets and the moment test for t-designs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .combinatorics import distance_distribution, space_moment
from .perm import Permutation, PermSet

_BLOCK_CELLS = 1 << 22


def _agreement_counts(rows: np.ndarray, D: np.ndarray, n: int) -> np.ndarray:
    """Histogram over 0..n of ``distance(r, d)`` for all ``r`` in rows, ``d`` in D."""
    counts = np.zeros(n + 1, dtype=np.int64)
    block = max(1, _BLOCK_CELLS // max(1, D.shape[0] * n))
    for start in range(0, rows.shape[0], block):
        chunk = rows[start:start + block]
        agree = (chunk[:, None, :] == D[None, :, :]).sum(axis=2)
        counts += np.bincount((n - agree).ravel(), minlength=n + 1)
    return counts


@dataclass(frozen=True)
class FrequencyVector:
    n: int
    counts: tuple[int, ...]
    size: int

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def f(self) -> tuple[Fraction, ...]:
        total = self.total
        return tuple(Fraction(c, total) for c in self.counts)


def frequencies(D: PermSet) -> FrequencyVector:
    """Counts of ordered pairs of D at each distance, normalised by ``|D|**2``."""
    arr = D.array
    counts = _agreement_counts(arr, arr, D.n)
    return FrequencyVector(D.n, tuple(int(c) for c in counts), len(D))


def distance_profile(D: PermSet, sigma: Permutation) -> FrequencyVector:
    """Distribution of ``distance(sigma, d)`` over ``d`` in D (total ``|D|``).

    For a group this is the fixed-point distribution of the coset ``sigma D``.
    """
    row = np.asarray(sigma.images, dtype=D.array.dtype)[None, :]
    counts = _agreement_counts(row, D.array, D.n)
    return FrequencyVector(D.n, tuple(int(c) for c in counts), len(D))


def design_moment(fv: FrequencyVector, i: int) -> Fraction:
    if i < 0:
        raise ValueError("moment order must be non-negative")
    return Fraction(sum(c * j**i for j, c in enumerate(fv.counts)), fv.total)


@dataclass(frozen=True)
class StrengthReport:
    n: int
    size: int
    strength: int
    moment_table: tuple[tuple[int, Fraction, Fraction], ...]
    is_one_design: bool

    @property
    def first_failure(self) -> tuple[int, Fraction, Fraction] | None:
        if self.moment_table and self.moment_table[-1][1] != self.moment_table[-1][2]:
            return self.moment_table[-1]
        return None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "size": self.size,
            "strength": self.strength,
            "moments": [{"i": i, "design": fraction_str(d), "space": fraction_str(s)}
                        for i, d, s in self.moment_table],
            "is_one_design": self.is_one_design,
        }


def fraction_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def strength_from_frequencies(fv: FrequencyVector) -> StrengthReport:
    table = []
    strength = 0
    for i in range(1, fv.n + 1):
        dm, sm = design_moment(fv, i), space_moment(fv.n, i)
        table.append((i, dm, sm))
        if dm != sm:
            break
        strength = i
    return StrengthReport(fv.n, fv.size, strength, tuple(table), strength >= 1)


def design_strength(D: PermSet) -> StrengthReport:
    """Largest t <= n whose first t distance moments match those of S_n exactly."""
    return strength_from_frequencies(frequencies(D))


def is_one_design(D: PermSet) -> bool:
    return design_moment(frequencies(D), 1) == D.n - 1


def _coefficients(Q) -> Sequence:
    return getattr(Q, "coeffs", Q)


def _is_exact(coeffs: Sequence) -> bool:
    return all(isinstance(c, Rational) for c in coeffs)


def evaluate(coeffs: Sequence, x):
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def expectation(probabilities: Sequence[Fraction], Q):
    """``sum_i p_i Q(i)``; exact when Q has rational coefficients, float otherwise."""
    coeffs = list(_coefficients(Q))
    if _is_exact(coeffs):
        return sum((p * evaluate(coeffs, Fraction(i)) for i, p in enumerate(probabilities)),
                   Fraction(0))
    fc = [float(c) for c in coeffs]
    return float(sum(float(p) * evaluate(fc, float(i)) for i, p in enumerate(probabilities)))


def design_expectation(D: PermSet | FrequencyVector, Q):
    """Mean of ``Q(distance)`` over ordered pairs of D.  ``Q`` is ascending coefficients."""
    fv = D if isinstance(D, FrequencyVector) else frequencies(D)
    return expectation(fv.f, Q)


def space_expectation(n: int, Q):
    return expectation(distance_distribution(n), Q)
