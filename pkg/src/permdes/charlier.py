"""Charlier polynomials for the unit Poisson weight and certified root isolation.

Normalisation follows the generating function ``e^t (1-t)^x = sum C_k(x) t^k / k!``,
so ``C_0 = 1``, ``C_1 = 1 - x``, ``C_2 = x^2 - 3x + 1``.  The falling-factorial
form with leading ``(-1)^k`` equals ``(-1)^k C_k``; the zeros are the same.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .combinatorics import rencontres
from .polynomial import IntPolynomial

DEFAULT_TOL = Fraction(1, 10**9)


class OrthogonalityError(AssertionError):
    pass


@lru_cache(maxsize=None)
def charlier_poly(k: int) -> IntPolynomial:
    """``C_{k+1} = (k + 1 - x) C_k - k C_{k-1}``."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    if k == 0:
        return IntPolynomial((1,))
    if k == 1:
        return IntPolynomial((1, -1))
    prev, cur = charlier_poly(k - 2), charlier_poly(k - 1)
    j = k - 1
    return IntPolynomial((j + 1, -1)) * cur - prev * j


@lru_cache(maxsize=None)
def reversed_charlier(k: int, n: int) -> IntPolynomial:
    """``x -> C_k(n - x)``."""
    return charlier_poly(k).compose_linear(n, -1)


def reversed_eval(k: int, n: int, x) -> Fraction:
    return charlier_poly(k)(n - Fraction(x))


def value_table(poly: IntPolynomial, n: int) -> list[Fraction]:
    return [Fraction(poly(i)) for i in range(n + 1)]


def space_inner_product(n: int, F: Sequence, G: Sequence) -> Fraction:
    """``(1/n!) sum_k w_{n-k} F(k) G(k)`` for value tables on ``0..n``."""
    if len(F) != n + 1 or len(G) != n + 1:
        raise ValueError(f"value tables must cover 0..{n}")
    w = rencontres(n).w
    total = sum(w[n - k] * Fraction(F[k]) * Fraction(G[k]) for k in range(n + 1))
    return total / math.factorial(n)


@dataclass(frozen=True)
class OrthogonalityReport:
    n: int
    rmax: int
    entries: tuple[tuple[int, int, Fraction], ...]

    @property
    def passed(self) -> bool:
        return all(v == _expected(r, s) for r, s, v in self.entries)


def _expected(r: int, s: int) -> int:
    return math.factorial(r) if r == s else 0


def verify_orthogonality(n: int, rmax: int) -> OrthogonalityReport:
    """Check ``<C^_r, C^_s>_n == r! [r == s]`` exactly for ``0 <= r, s <= rmax``."""
    if 2 * rmax > n:
        raise ValueError(f"rmax={rmax} exceeds n/2 for n={n}")
    tables = [value_table(reversed_charlier(r, n), n) for r in range(rmax + 1)]
    entries = []
    for r in range(rmax + 1):
        for s in range(rmax + 1):
            value = space_inner_product(n, tables[r], tables[s])
            if value != _expected(r, s):
                raise OrthogonalityError(
                    f"<C^_{r}, C^_{s}>_{n} = {value}, expected {_expected(r, s)}")
            entries.append((r, s, value))
    return OrthogonalityReport(n, rmax, tuple(entries))


def sturm_sequence(P: IntPolynomial) -> list[IntPolynomial]:
    seq = [P, P.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        rem = seq[-2].rational_remainder(seq[-1])
        if not rem:
            break
        seq.append(-IntPolynomial.from_rational(rem))
    return [p for p in seq if not p.is_zero()]


def _sign_at(P: IntPolynomial, x: Fraction) -> int:
    # sign of den^deg * P(num/den), all in integers
    num, den = x.numerator, x.denominator
    acc = 0
    den_pow = 1
    for c in reversed(P.coeffs):
        acc = acc * num + c * den_pow
        den_pow *= den
    return (acc > 0) - (acc < 0)


def _sign_changes(seq: Sequence[IntPolynomial], x) -> int:
    x = Fraction(x)
    changes = 0
    last = 0
    for p in seq:
        sign = _sign_at(p, x)
        if sign == 0:
            continue
        if last and sign != last:
            changes += 1
        last = sign
    return changes


def sturm_count(P: IntPolynomial, lo, hi, seq: Sequence[IntPolynomial] | None = None) -> int:
    """Number of distinct real roots of P in ``(lo, hi]``; endpoints must not be roots."""
    if P.is_zero():
        raise ValueError("zero polynomial has no Sturm sequence")
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    for end in (lo, hi):
        if _sign_at(P, end) == 0:
            raise ValueError(f"interval endpoint {end} is a root; perturb it")
    if seq is None:
        seq = sturm_sequence(P)
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def cauchy_bound(P: IntPolynomial) -> Fraction:
    lead = abs(P.leading)
    return 1 + Fraction(max(abs(c) for c in P.coeffs[:-1]), lead) if P.degree > 0 else Fraction(1)


def krasikov_ceiling(k: int) -> int:
    """An integer at least ``k + 2 sqrt(k) + 2``."""
    r = math.isqrt(k)
    if r * r < k:
        r += 1
    return k + 2 * r + 2


@dataclass(frozen=True)
class RootBracket:
    k: int
    lo: Fraction
    hi: Fraction
    sign_change: bool
    exact: bool = False

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def _centred(P, seq, root: Fraction, tol: Fraction) -> tuple[Fraction, Fraction]:
    delta = tol / 2
    while True:
        lo, hi = root - delta, root + delta
        if P(lo) != 0 and P(hi) != 0 and sturm_count(P, lo, hi, seq) == 1:
            return lo, hi
        delta /= 2


def largest_zero(k: int, tol=DEFAULT_TOL) -> RootBracket:
    """Certified bracket of width <= tol around the largest zero of C_k.

    Bisection starts on ``(0, K]`` with K an integer above ``k + 2 sqrt(k) + 1``;
    the Cauchy bound confirms that no zero lies above K.
    """
    if k < 1:
        raise ValueError("C_0 has no zeros")
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    P = charlier_poly(k)
    seq = sturm_sequence(P)
    bound = cauchy_bound(P)
    top = Fraction(krasikov_ceiling(k))
    if bound > top and sturm_count(P, top, bound, seq):
        raise ArithmeticError(f"C_{k} has a root above {top}")
    # zeros of polynomials orthogonal on [0, inf) are positive; fall back if not
    lo, hi = Fraction(0), top
    if P(lo) == 0 or sturm_count(P, lo, hi, seq) < 1:
        lo = -bound
        if sturm_count(P, lo, hi, seq) < 1:
            raise ArithmeticError(f"C_{k} has no real root in ({lo}, {hi}]")
    while hi - lo > tol or sturm_count(P, lo, hi, seq) != 1:
        mid = (lo + hi) / 2
        while _sign_at(P, mid) == 0:
            mid += (hi - mid) / 3
        if sturm_count(P, mid, hi, seq) >= 1:
            lo = mid
        else:
            hi = mid
    # rational zeros of a polynomial with unit leading coefficient are integers
    for m in range(math.ceil(lo), math.floor(hi) + 1):
        if P(m) == 0:
            lo, hi = _centred(P, seq, Fraction(m), min(tol, hi - lo))
            return RootBracket(k, lo, hi, (P(lo) > 0) != (P(hi) > 0), exact=True)
    return RootBracket(k, lo, hi, (P(lo) > 0) != (P(hi) > 0))


def integer_root_scan(k: int, hi: int) -> list[int]:
    P = charlier_poly(k)
    return [m for m in range(0, hi + 1) if P(m) == 0]


def krasikov_upper(k: int) -> float:
    """``k + 2 sqrt(k) + 1``, a known upper bound on the largest zero of C_k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return k + 2 * math.sqrt(k) + 1
