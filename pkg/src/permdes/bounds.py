"""Covering-radius upper bounds for permutation designs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .charlier import DEFAULT_TOL, krasikov_upper, largest_zero, reversed_charlier
from .design import design_strength, distance_profile, expectation, frequencies
from .perm import Permutation, PermSet, transitivity_degree
from .polynomial import multiply, synthetic_division
from .radius import DEFAULT_DEGREE_CAP, covering_radius

DEFAULT_SEED = 20160229
DEFAULT_ANNIHILATION_TOL = 1e-8

S1_CAVEAT = "s=1: x(1)=1 makes n-1 an integer strict bound; s>1 hypothesis not met"
DEGENERATE_CAVEAT = "n - x(s) <= 0: no design of this strength fits this degree"

__all__ = [
    "AnnihilationError", "AnnihilationReport", "Bound", "BoundReport", "bound_report",
    "half_strength", "krasikov_upper", "theorem1_bound", "theorem2_bound", "verify_annihilation",
]


def half_strength(t: int) -> int:
    if t < 1:
        raise ValueError("strength must be at least 1")
    return (t + 1) // 2


@dataclass(frozen=True)
class Bound:
    value: int
    caveats: tuple[str, ...] = ()


def theorem1_bound(n: int, t: int, tol=DEFAULT_TOL) -> Bound:
    """Integer form of ``rho(D) < n - x(s)`` for a t-design, ``s = half_strength(t)``.

    For s > 1 the zero x(s) is never an integer, so ``floor(n - x(s))`` is a valid
    bound; the bracket is refined until that floor is unambiguous.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if t < 2:
        raise ValueError("t = 1 is covered by theorem2_bound")
    s = half_strength(t)
    if s == 1:
        return Bound(n - 2, (S1_CAVEAT,))
    tol = Fraction(tol)
    bracket = largest_zero(s, tol)
    while math.floor(n - bracket.lo) != math.floor(n - bracket.hi):
        tol /= 1000
        bracket = largest_zero(s, tol)
    if n - bracket.lo <= 0:
        return Bound(0, (DEGENERATE_CAVEAT,))
    return Bound(math.floor(n - bracket.hi))


def theorem2_bound(n: int) -> int:
    """A 1-design has mean distance n - 1 from every point, hence radius <= n - 1."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return n - 1


@dataclass(frozen=True)
class AnnihilationReport:
    n: int
    t: int
    s: int
    root: Fraction
    polynomial: tuple[Fraction, ...]
    trials: int
    tol: float
    max_residual: float
    pairwise_residual: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol and self.pairwise_residual <= self.tol


class AnnihilationError(AssertionError):
    def __init__(self, report: AnnihilationReport):
        self.report = report
        super().__init__(
            f"annihilation residual {max(report.max_residual, report.pairwise_residual):.3e} "
            f"exceeds tolerance {report.tol:.3e} (n={report.n}, t={report.t}, s={report.s})")


def annihilating_polynomial(n: int, s: int, tol=DEFAULT_TOL) -> tuple[Fraction, list[Fraction]]:
    """``C^_s * P_s`` where ``P_s = C^_s / (x - (n - x(s)))``.

    x(s) is replaced by the rational midpoint of its bracket; the quotient is
    still of degree s - 1, which is all the orthogonality argument uses.
    """
    chat = [Fraction(c) for c in reversed_charlier(s, n).coeffs]
    root = n - largest_zero(s, tol).midpoint
    quotient, _ = synthetic_division(chat, root)
    return root, multiply(chat, quotient)


def verify_annihilation(D: PermSet, t: int, trials: int = 100, tol: float = DEFAULT_ANNIHILATION_TOL,
                        seed: int = DEFAULT_SEED, raise_on_failure: bool = True) -> AnnihilationReport:
    """Average ``C^_s P_s`` over distances from random points to D; it must vanish.

    For a t-design with ``2s - 1 <= t`` the average is the same as over all of
    S_n, which is zero.  The tolerance is scaled by the largest coefficient.
    """
    s = half_strength(t)
    if 2 * s - 1 > D.n:
        raise ValueError(f"degree {2 * s - 1} exceeds n={D.n}")
    root, Q = annihilating_polynomial(D.n, s)
    scale = max(1.0, max(abs(float(c)) for c in Q))
    tol_eff = tol * scale
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        sigma = Permutation(tuple(int(v) for v in rng.permutation(D.n)))
        value = expectation(distance_profile(D, sigma).f, Q)
        worst = max(worst, abs(float(value)))
    pairwise = abs(float(expectation(frequencies(D).f, Q)))
    report = AnnihilationReport(D.n, t, s, root, tuple(Q), trials, tol_eff, worst, pairwise)
    if raise_on_failure and not report.passed:
        raise AnnihilationError(report)
    return report


@dataclass
class BoundReport:
    n: int
    size: int
    t: int
    transitivity: int
    s: int | None
    thm1_bound: int | None
    thm2_bound: int | None
    cw_bound: int | None
    krasikov_based_bound: int | None
    exact_radius: int | None = None
    witness: Permutation | None = None
    caveats: list[str] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    def upper_bounds(self) -> dict[str, int]:
        named = {"thm1": self.thm1_bound, "thm2": self.thm2_bound, "cw": self.cw_bound}
        return {k: v for k, v in named.items() if v is not None}

    @property
    def tightest(self) -> list[str]:
        bounds = self.upper_bounds()
        if not bounds:
            return []
        low = min(bounds.values())
        return sorted(k for k, v in bounds.items() if v == low)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "size": self.size,
            "strength": self.t,
            "transitivity": self.transitivity,
            "s": self.s,
            "bounds": {
                "thm1": self.thm1_bound,
                "thm2": self.thm2_bound,
                "cw": self.cw_bound,
                "krasikov_floor": self.krasikov_based_bound,
            },
            "tightest": self.tightest,
            "exact_radius": self.exact_radius,
            "witness": list(self.witness.one_based()) if self.witness else None,
            "caveats": list(self.caveats) + [f"violation: {v}" for v in self.violations],
        }


def bound_report(D: PermSet, compute_exact: bool = False, mode: str = "auto",
                 cap: int = DEFAULT_DEGREE_CAP, jobs: int = 1) -> BoundReport:
    """Strength, transitivity and every applicable bound for D, optionally checked
    against the exact covering radius.

    ``krasikov_based_bound`` is ``floor(n - (s + 2 sqrt(s) + 1))``; it sits below
    the Theorem-1 value and is informational, not an upper bound on the radius.
    """
    n = D.n
    t = design_strength(D).strength
    tr = transitivity_degree(D)
    s = half_strength(t) if t >= 1 else None
    caveats: list[str] = []
    thm1 = kras = None
    if t >= 2:
        b = theorem1_bound(n, t)
        thm1 = b.value
        caveats.extend(b.caveats)
        kras = math.floor(n - krasikov_upper(s))
    report = BoundReport(
        n=n, size=len(D), t=t, transitivity=tr, s=s, thm1_bound=thm1,
        thm2_bound=theorem2_bound(n) if t >= 1 else None,
        cw_bound=n - tr if tr >= 1 else None,
        krasikov_based_bound=kras, caveats=caveats)
    if compute_exact:
        result = covering_radius(D, mode=mode, cap=cap, jobs=jobs)
        report.exact_radius = result.radius
        report.witness = result.witness
        report.caveats.extend(result.caveats)
        for name, value in report.upper_bounds().items():
            if result.radius > value:
                report.violations.append(f"exact radius {result.radius} > {name} bound {value}")
    return report
