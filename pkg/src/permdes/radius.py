"""Exact covering radius of a permutation set by exhaustive search over S_n.

S_n is walked in lexicographic order, split into ``n`` blocks by the image of
0.  The reported witness is always the lexicographically least permutation
attaining the radius, whatever the mode or number of workers.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .perm import Permutation, PermSet

DEFAULT_DEGREE_CAP = 10
_CHUNK_CELLS = 1 << 22


class DegreeCapError(ValueError):
    pass


@dataclass(frozen=True)
class RadiusResult:
    radius: int
    witness: Permutation
    enumerated: int
    mode: str
    caveats: tuple[str, ...] = ()
    seconds: float | None = field(default=None, compare=False)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "radius": self.radius,
            "witness": list(self.witness.one_based()),
            "enumerated": self.enumerated,
            "mode": self.mode,
        }
        if self.caveats:
            out["caveats"] = list(self.caveats)
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 6)
        return out


def _check_cap(D: PermSet, cap: int) -> None:
    if D.n > cap:
        raise DegreeCapError(
            f"degree {D.n} exceeds the search cap {cap} ({math.factorial(D.n)} permutations); "
            "use coset mode for groups or raise the cap")


@lru_cache(maxsize=4)
def _tail_perms(m: int) -> np.ndarray:
    if m == 0:
        return np.zeros((1, 0), dtype=np.int8)
    return np.array(list(itertools.permutations(range(m))), dtype=np.int8)


def lex_block(n: int, first: int) -> np.ndarray:
    """All permutations with image of 0 equal to ``first``, in lexicographic order."""
    rest = np.array([x for x in range(n) if x != first], dtype=np.int8)
    tail = rest[_tail_perms(n - 1)]
    head = np.full((tail.shape[0], 1), first, dtype=np.int8)
    return np.hstack([head, tail])


def min_distances(rows: np.ndarray, D: np.ndarray) -> np.ndarray:
    """``min_d distance(r, d)`` per row: n minus the best positional agreement.

    ``sigma d^-1`` fixes ``d(x)`` exactly when ``sigma(x) == d(x)``, so no
    composition or inverse is formed.
    """
    n = rows.shape[1]
    out = np.empty(rows.shape[0], dtype=np.int64)
    step = max(1, _CHUNK_CELLS // max(1, D.shape[0] * n))
    for start in range(0, rows.shape[0], step):
        chunk = rows[start:start + step]
        agree = (chunk[:, None, :] == D[None, :, :]).sum(axis=2)
        out[start:start + step] = n - agree.max(axis=1)
    return out


def _scan_block(D: np.ndarray, n: int, first: int, best: int = -1):
    """Best (radius, witness, enumerated) in one block, stopping once distance n is seen."""
    rows = lex_block(n, first)
    dists = min_distances(rows, D)
    hits = np.flatnonzero(dists == n)
    enumerated = int(hits[0]) + 1 if hits.size else rows.shape[0]
    dists = dists[:enumerated]
    top = int(dists.max())
    if top <= best:
        return best, None, enumerated
    idx = int(np.argmax(dists))
    return top, tuple(int(v) for v in rows[idx]), enumerated


def _scan_block_worker(args):
    D, n, first = args
    return _scan_block(D, n, first)


def covering_radius_naive(D: PermSet, cap: int = DEFAULT_DEGREE_CAP, jobs: int = 1) -> RadiusResult:
    """``max over sigma in S_n of min over d in D of distance(sigma, d)``."""
    _check_cap(D, cap)
    start = time.perf_counter()
    n = D.n
    arr = D.array.astype(np.int8)
    best, witness, enumerated = -1, None, 0
    if jobs > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_block_worker, [(arr, n, f) for f in range(n)]))
        # reduce in block order so the result matches the serial walk exactly
        for top, wit, count in parts:
            enumerated += count
            if top > best:
                best, witness = top, wit
            if best == n:
                break
    else:
        for first in range(n):
            top, wit, count = _scan_block(arr, n, first, best)
            enumerated += count
            if wit is not None:
                best, witness = top, wit
            if best == n:
                break
    return RadiusResult(best, Permutation(witness), enumerated, "naive",
                        seconds=time.perf_counter() - start)


def lex_rank(rows: np.ndarray) -> np.ndarray:
    """Position of each row in the lexicographic listing of S_n (Lehmer code)."""
    m, n = rows.shape
    ranks = np.zeros(m, dtype=np.int64)
    for i in range(n - 1):
        smaller = (rows[:, i + 1:] < rows[:, i:i + 1]).sum(axis=1)
        ranks += smaller * math.factorial(n - 1 - i)
    return ranks


def covering_radius_coset(D: PermSet, cap: int = DEFAULT_DEGREE_CAP) -> RadiusResult:
    """Evaluate one permutation per left coset ``sigma D`` of the group D.

    ``distance(sigma g, D) == distance(sigma, D)`` for ``g`` in a group D, so the
    lexicographically least element of each coset stands for all of it.
    """
    _check_cap(D, cap)
    if not D.check_group():
        raise ValueError("coset mode needs D closed under composition")
    start = time.perf_counter()
    n = D.n
    arr = D.array.astype(np.int64)
    arr8 = D.array.astype(np.int8)
    visited = np.zeros(math.factorial(n), dtype=bool)
    best, witness, enumerated = -1, None, 0
    offset = 0
    for first in range(n):
        rows = lex_block(n, first)
        reps = []
        for local in np.flatnonzero(~visited[offset:offset + rows.shape[0]]):
            if visited[offset + local]:
                continue
            sigma = rows[local].astype(np.int64)
            visited[lex_rank(sigma[arr])] = True
            reps.append(local)
        if reps:
            rep_rows = rows[np.array(reps)]
            dists = min_distances(rep_rows, arr8)
            hits = np.flatnonzero(dists == n)
            count = int(hits[0]) + 1 if hits.size else len(reps)
            enumerated += count
            dists = dists[:count]
            top = int(dists.max())
            if top > best:
                best = top
                witness = tuple(int(v) for v in rep_rows[int(np.argmax(dists))])
            if best == n:
                break
        offset += rows.shape[0]
    return RadiusResult(best, Permutation(witness), enumerated, "coset-pruned",
                        seconds=time.perf_counter() - start)


def covering_radius(D: PermSet, mode: str = "auto", cap: int = DEFAULT_DEGREE_CAP,
                    jobs: int = 1) -> RadiusResult:
    """Covering radius with ``mode`` in ``auto``, ``naive`` or ``coset``.

    ``auto`` prunes by cosets when D is a group; ``coset`` on a non-group falls
    back to the naive walk and says so in ``caveats``.
    """
    if mode not in ("auto", "naive", "coset"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "naive":
        return covering_radius_naive(D, cap, jobs)
    if D.check_group():
        return covering_radius_coset(D, cap)
    result = covering_radius_naive(D, cap, jobs)
    if mode == "coset":
        return RadiusResult(result.radius, result.witness, result.enumerated, result.mode,
                            ("set is not a group; coset mode fell back to naive",),
                            result.seconds)
    return result


def farthest_points(D: PermSet, k: int, cap: int = DEFAULT_DEGREE_CAP) -> list[tuple[Permutation, int]]:
    """The ``k`` permutations farthest from D, by distance descending then lexicographically."""
    _check_cap(D, cap)
    if k < 0:
        raise ValueError("k must be non-negative")
    arr = D.array.astype(np.int8)
    blocks = [lex_block(D.n, f) for f in range(D.n)]
    rows = np.vstack(blocks)
    dists = min_distances(rows, arr)
    order = np.argsort(-dists, kind="stable")[:k]
    return [(Permutation(tuple(int(v) for v in rows[i])), int(dists[i])) for i in order]
