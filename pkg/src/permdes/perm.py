"""Permutations of {0, ..., n-1}, permutation sets, and the fixed-point distance.

Permutations are stored as 0-based image tuples; all text I/O uses 1-based
one-line notation.  Composition is ``compose(p, q)(x) == p(q(x))``.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_GROUP_CAP = 10_000_000

FAMILIES = ("symmetric", "alternating", "cyclic", "dihedral", "agl1", "pgl2")


class PermSetFormatError(ValueError):
    """Raised when PERMSET text cannot be parsed."""


class GroupTooLargeError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if not images:
            raise ValueError("permutation degree must be at least 1")
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection of 0..{len(images) - 1}: {images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_one_based(cls, images: Iterable[int]) -> Permutation:
        return cls(tuple(int(v) - 1 for v in images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __len__(self) -> int:
        return len(self.images)

    def one_based(self) -> tuple[int, ...]:
        return tuple(v + 1 for v in self.images)

    def __str__(self) -> str:
        return " ".join(map(str, self.one_based()))


def _check_degree(p: Permutation, q: Permutation) -> None:
    if p.n != q.n:
        raise ValueError(f"degree mismatch: {p.n} != {q.n}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p o q``, i.e. the map ``x -> p(q(x))``."""
    _check_degree(p, q)
    pi = p.images
    return Permutation(tuple(pi[v] for v in q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for x, v in enumerate(p.images):
        inv[v] = x
    return Permutation(tuple(inv))


def fixed_points(p: Permutation) -> int:
    return sum(1 for x, v in enumerate(p.images) if x == v)


def distance(p: Permutation, q: Permutation) -> int:
    """n minus the number of fixed points of ``p o q^-1``.

    ``p q^-1`` fixes ``y`` exactly when ``p(x) == q(x)`` for ``x = q^-1(y)``, so
    the distance is the number of positions where the image arrays differ.
    """
    _check_degree(p, q)
    return sum(1 for a, b in zip(p.images, q.images) if a != b)


@dataclass(frozen=True)
class PermSet:
    """A non-empty, duplicate-free set of permutations of common degree ``n``.

    ``is_group`` is ``None`` until computed (see :meth:`check_group`).
    """

    n: int
    elements: tuple[Permutation, ...]
    is_group: bool | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        if not elements:
            raise ValueError("a permutation set must be non-empty")
        for p in elements:
            if p.n != self.n:
                raise ValueError(f"element {p} has degree {p.n}, expected {self.n}")
        if len(set(elements)) != len(elements):
            raise ValueError("duplicate permutations in set")

    @classmethod
    def from_images(cls, rows: Iterable[Sequence[int]], n: int | None = None,
                    is_group: bool | None = None) -> PermSet:
        perms = tuple(Permutation(tuple(r)) for r in rows)
        if n is None:
            n = perms[0].n if perms else 0
        return cls(n, perms, is_group)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __contains__(self, p: object) -> bool:
        return p in self._lookup

    @cached_property
    def _lookup(self) -> frozenset[Permutation]:
        return frozenset(self.elements)

    @cached_property
    def array(self) -> np.ndarray:
        """Images as an ``(len, n)`` int array; row order follows ``elements``."""
        arr = np.array([p.images for p in self.elements], dtype=np.int16)
        arr.flags.writeable = False
        return arr

    def sorted(self) -> PermSet:
        return PermSet(self.n, tuple(sorted(self.elements)), self.is_group)

    def translate(self, sigma: Permutation) -> PermSet:
        """The left translate ``{sigma o d : d in D}``."""
        return PermSet(self.n, tuple(compose(sigma, d) for d in self.elements))

    def conjugate(self, sigma: Permutation) -> PermSet:
        sinv = inverse(sigma)
        return PermSet(self.n, tuple(compose(compose(sigma, d), sinv) for d in self.elements),
                       self.is_group)

    def codes(self) -> np.ndarray:
        """Injective int64 encoding of each element (base-n digits of its images)."""
        return encode_rows(self.array, self.n)

    def check_group(self) -> bool:
        """Closure under composition (finite sets need nothing else)."""
        if self.is_group is None:
            arr = self.array.astype(np.int64)
            members = np.sort(self.codes())
            closed = True
            for row in arr:
                prods = encode_rows(row[arr], self.n)
                pos = np.searchsorted(members, prods)
                pos[pos == members.size] = 0
                if not np.array_equal(members[pos], prods):
                    closed = False
                    break
            object.__setattr__(self, "is_group", closed)
        return bool(self.is_group)


def encode_rows(arr: np.ndarray, n: int) -> np.ndarray:
    weights = n ** np.arange(arr.shape[-1], dtype=np.int64)
    return arr.astype(np.int64) @ weights


def parse_permset(text: str | bytes) -> PermSet:
    """Parse PERMSET v1 text (1-based one-line rows) into a :class:`PermSet`."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = [ln.strip() for ln in text.splitlines()]
    data = [ln for ln in lines if ln and not ln.startswith("#")]
    if not data:
        raise PermSetFormatError("missing header line 'n m'")
    header = data[0].split()
    if len(header) != 2:
        raise PermSetFormatError(f"malformed header: {data[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise PermSetFormatError(f"malformed header: {data[0]!r}") from None
    if n < 1 or m < 1:
        raise PermSetFormatError(f"header needs n >= 1 and m >= 1, got {n} {m}")
    rows = data[1:]
    if len(rows) != m:
        raise PermSetFormatError(f"header declares {m} rows, found {len(rows)}")
    perms = []
    seen = set()
    for lineno, row in enumerate(rows, start=1):
        try:
            vals = [int(tok) for tok in row.split()]
        except ValueError:
            raise PermSetFormatError(f"row {lineno}: non-integer entry") from None
        if len(vals) != n:
            raise PermSetFormatError(f"row {lineno}: expected {n} entries, got {len(vals)}")
        if sorted(vals) != list(range(1, n + 1)):
            raise PermSetFormatError(f"row {lineno}: not a bijection of 1..{n}: {row!r}")
        p = Permutation.from_one_based(vals)
        if p in seen:
            raise PermSetFormatError(f"row {lineno}: duplicate permutation {row!r}")
        seen.add(p)
        perms.append(p)
    return PermSet(n, tuple(perms))


def format_permset(D: PermSet, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"{D.n} {len(D)}")
    out.extend(str(p) for p in D.elements)
    return "\n".join(out) + "\n"


def generate_group(generators: Iterable[Permutation], n: int | None = None,
                   cap: int = DEFAULT_GROUP_CAP) -> PermSet:
    """Closure of ``generators`` under composition, sorted lexicographically.

    An empty generator list needs ``n`` and yields the trivial group.
    """
    gens = list(generators)
    if n is None:
        if not gens:
            raise ValueError("degree n is required for an empty generator list")
        n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ValueError(f"generator {g} has degree {g.n}, expected {n}")
    ident = tuple(range(n))
    gen_images = [g.images for g in gens]
    seen = {ident}
    queue = deque([ident])
    while queue:
        cur = queue.popleft()
        for g in gen_images:
            nxt = tuple(g[v] for v in cur)
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise GroupTooLargeError(f"group closure exceeds cap of {cap} elements")
                queue.append(nxt)
    # finite: closure under products already contains inverses
    return PermSet(n, tuple(Permutation(p) for p in sorted(seen)), is_group=True)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _parity(images: Sequence[int]) -> int:
    seen = [False] * len(images)
    transpositions = 0
    for start in range(len(images)):
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = images[x]
            length += 1
        if length:
            transpositions += length - 1
    return transpositions % 2


def construct_named(family: str, n: int | None = None, p: int | None = None,
                    cap: int = DEFAULT_GROUP_CAP) -> PermSet:
    """Build a named permutation group, elements in lexicographic order.

    ``symmetric``, ``alternating``, ``cyclic``, ``dihedral`` take the degree ``n``;
    ``agl1`` (x -> ax+b on Z_p) and ``pgl2`` (fractional-linear maps on the
    projective line over Z_p, infinity labelled ``p``) take a prime ``p``.
    """
    family = family.lower()
    if family in ("agl1", "pgl2"):
        if p is None:
            raise ValueError(f"{family} needs a prime p")
        if not is_prime(p):
            raise ValueError(f"{family} requires a prime field size, got p={p}")
        return _agl1(p) if family == "agl1" else _pgl2(p)
    if family not in FAMILIES:
        raise ValueError(f"unsupported family {family!r}; choose from {', '.join(FAMILIES)}")
    if n is None or n < 1:
        raise ValueError(f"{family} needs a degree n >= 1")
    if family == "symmetric":
        if math.factorial(n) > cap:
            raise GroupTooLargeError(f"S_{n} has {math.factorial(n)} elements, above cap {cap}")
        rows = itertools.permutations(range(n))
    elif family == "alternating":
        if math.factorial(n) // 2 > cap:
            raise GroupTooLargeError(f"A_{n} exceeds cap {cap}")
        rows = (r for r in itertools.permutations(range(n)) if _parity(r) == 0)
    elif family == "cyclic":
        rows = sorted(tuple((x + k) % n for x in range(n)) for k in range(n))
    else:
        rots = [tuple((x + k) % n for x in range(n)) for k in range(n)]
        refl = [tuple((k - x) % n for x in range(n)) for k in range(n)]
        rows = sorted(set(rots + refl))
    return PermSet(n, tuple(Permutation(r) for r in rows), is_group=True)


def _agl1(p: int) -> PermSet:
    rows = {tuple((a * x + b) % p for x in range(p)) for a in range(1, p) for b in range(p)}
    return PermSet(p, tuple(Permutation(r) for r in sorted(rows)), is_group=True)


def _pgl2(p: int) -> PermSet:
    inf = p
    inverses = {x: pow(x, -1, p) for x in range(1, p)}

    def act(a: int, b: int, c: int, d: int, x: int) -> int:
        if x == inf:
            num, den = a, c
        else:
            num, den = (a * x + b) % p, (c * x + d) % p
        if den == 0:
            return inf
        return num * inverses[den] % p

    rows = set()
    for a, b, c, d in itertools.product(range(p), repeat=4):
        if (a * d - b * c) % p:
            rows.add(tuple(act(a, b, c, d, x) for x in range(p + 1)))
    return PermSet(p + 1, tuple(Permutation(r) for r in sorted(rows)), is_group=True)


def _is_t_transitive(arr: np.ndarray, n: int, t: int) -> bool:
    if t == 0:
        return True
    n_tuples = math.perm(n, t)
    if arr.shape[0] < n_tuples:
        return False
    for tup in itertools.permutations(range(n), t):
        codes = encode_rows(arr[:, tup], n)
        if np.unique(codes).size != n_tuples:
            return False
    return True


def transitivity_degree(D: PermSet) -> int:
    """Largest t such that D maps every ordered distinct t-tuple onto every other.

    No group structure is assumed: for each source tuple the set of its images
    under all of D must cover every distinct t-tuple.
    """
    arr = D.array
    t = 0
    while t < D.n - 1 and _is_t_transitive(arr, D.n, t + 1):
        t += 1
    if t == D.n - 1:
        # images of n-1 distinct points fix the last one
        t = D.n
    return t
