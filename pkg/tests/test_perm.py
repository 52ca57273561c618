import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permdes.perm import (Permutation, PermSet, PermSetFormatError, GroupTooLargeError, compose,
                          construct_named, distance, fixed_points, format_permset, generate_group,
                          inverse, parse_permset, transitivity_degree)

import oracles


def cyc(n, *cycle):
    """Permutation of n letters from one 1-based cycle."""
    images = list(range(n))
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        images[a - 1] = b - 1
    return Permutation(tuple(images))


def perms(n):
    return st.permutations(list(range(n))).map(lambda r: Permutation(tuple(r)))


@st.composite
def perm_triples(draw):
    n = draw(st.integers(1, 9))
    return draw(perms(n)), draw(perms(n)), draw(perms(n))


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 2))
    with pytest.raises(ValueError):
        Permutation(())


def test_compose_convention():
    p, q = cyc(4, 1, 2), cyc(4, 2, 3)
    r = compose(p, q)
    assert all(r(x) == p(q(x)) for x in range(4))
    assert compose(Permutation.identity(4), p) == p
    assert compose(cyc(4, 1, 2), cyc(4, 1, 2)) == Permutation.identity(4)


def test_compose_degree_mismatch():
    with pytest.raises(ValueError, match="degree"):
        compose(Permutation.identity(3), Permutation.identity(4))
    with pytest.raises(ValueError):
        distance(Permutation.identity(3), Permutation.identity(4))


def test_inverse():
    assert inverse(Permutation.identity(5)) == Permutation.identity(5)
    assert inverse(cyc(3, 1, 2, 3)) == cyc(3, 1, 3, 2)


def test_fixed_points():
    assert fixed_points(Permutation.identity(5)) == 5
    assert fixed_points(cyc(5, 1, 2)) == 3
    assert fixed_points(cyc(5, 1, 2, 3, 4, 5)) == 0


def test_distance_examples():
    sigma = Permutation((3, 1, 4, 0, 5, 2))
    assert distance(sigma, sigma) == 0
    assert distance(sigma, compose(sigma, cyc(6, 1, 2))) == 2
    assert distance(Permutation.identity(4), cyc(4, 1, 2, 3, 4)) == 4


@settings(max_examples=200)
@given(perm_triples())
def test_metric_axioms(triple):
    p, q, r = triple
    d = distance(p, q)
    assert d == distance(q, p)
    assert (d == 0) == (p == q)
    assert d != 1
    assert distance(p, r) <= d + distance(q, r)
    assert d == oracles.brute_distance(p.images, q.images)


@settings(max_examples=200)
@given(perm_triples())
def test_left_invariance_and_inverse_law(triple):
    p, q, r = triple
    assert distance(compose(r, p), compose(r, q)) == distance(p, q)
    assert compose(p, inverse(p)) == Permutation.identity(p.n)
    assert inverse(inverse(p)) == p
    assert fixed_points(p) != p.n - 1


def test_parse_permset_roundtrip():
    D = parse_permset("3 2\n1 2 3\n2 3 1\n")
    assert D.n == 3 and len(D) == 2
    assert D.elements == (Permutation((0, 1, 2)), Permutation((1, 2, 0)))
    assert format_permset(D) == "3 2\n1 2 3\n2 3 1\n"
    assert parse_permset(b"# comment\n\n3 1\n# mid\n3 1 2\n").elements == (Permutation((2, 0, 1)),)


@pytest.mark.parametrize("text, match", [
    ("3 1\n1 1 3\n", "bijection"),
    ("3 2\n1 2 3\n1 2 3\n", "duplicate"),
    ("3 3\n1 2 3\n2 3 1\n", "declares 3"),
    ("3\n1 2 3\n", "header"),
    ("x y\n", "header"),
    ("3 1\n1 2\n", "expected 3"),
    ("", "header"),
])
def test_parse_permset_errors(text, match):
    with pytest.raises(PermSetFormatError, match=match):
        parse_permset(text)


def test_permset_invariants():
    with pytest.raises(ValueError):
        PermSet(3, ())
    with pytest.raises(ValueError):
        PermSet(3, (Permutation.identity(3), Permutation.identity(3)))
    with pytest.raises(ValueError):
        PermSet(3, (Permutation.identity(4),))


def test_generate_group_examples():
    s4 = generate_group([cyc(4, 1, 2), cyc(4, 1, 2, 3, 4)])
    assert len(s4) == 24 and s4.is_group
    assert list(s4.elements) == sorted(s4.elements)
    assert len(generate_group([cyc(3, 1, 2, 3)])) == 3
    trivial = generate_group([], n=4)
    assert trivial.elements == (Permutation.identity(4),)
    with pytest.raises(GroupTooLargeError):
        generate_group([cyc(6, 1, 2), cyc(6, 1, 2, 3, 4, 5, 6)], cap=100)


def test_generated_group_is_closed():
    G = generate_group([cyc(5, 1, 2, 3), cyc(5, 3, 4, 5)])
    members = set(G.elements)
    assert Permutation.identity(5) in members
    for a in G:
        assert inverse(a) in members
        for b in G:
            assert compose(a, b) in members
    assert PermSet(G.n, G.elements).check_group()


@pytest.mark.parametrize("family, kw, order, degree", [
    ("symmetric", {"n": 4}, 24, 4),
    ("alternating", {"n": 5}, 60, 5),
    ("cyclic", {"n": 6}, 6, 6),
    ("dihedral", {"n": 5}, 10, 5),
    ("agl1", {"p": 7}, 42, 7),
    ("agl1", {"p": 5}, 20, 5),
    ("pgl2", {"p": 5}, 120, 6),
    ("pgl2", {"p": 3}, 24, 4),
])
def test_construct_named_orders(family, kw, order, degree):
    G = construct_named(family, **kw)
    assert (len(G), G.n) == (order, degree)
    assert list(G.elements) == sorted(G.elements)
    # independent route: closure of the generated elements reproduces the set
    assert generate_group(G.elements).elements == G.elements


def test_affine_and_projective_groups_from_generators():
    p = 7
    translate = Permutation(tuple((x + 1) % p for x in range(p)))
    scale = Permutation(tuple((3 * x) % p for x in range(p)))  # 3 generates Z_7^*
    assert generate_group([translate, scale]).elements == construct_named("agl1", p=7).elements
    q = 5
    inf = q
    shift = Permutation(tuple(list((x + 1) % q for x in range(q)) + [inf]))
    mult = Permutation(tuple(list((2 * x) % q for x in range(q)) + [inf]))
    invert = Permutation(tuple([inf] + [(-pow(x, -1, q)) % q for x in range(1, q)] + [0]))
    assert generate_group([shift, mult, invert]).elements == construct_named("pgl2", p=5).elements


def test_sharp_transitivity_orders():
    for p in (5, 7, 11):
        assert len(construct_named("agl1", p=p)) == math.perm(p, 2)
        assert len(construct_named("pgl2", p=p)) == math.perm(p + 1, 3)


def test_construct_named_errors():
    with pytest.raises(ValueError, match="prime"):
        construct_named("agl1", p=6)
    with pytest.raises(ValueError, match="prime"):
        construct_named("pgl2", p=9)
    with pytest.raises(ValueError, match="unsupported"):
        construct_named("mathieu", n=11)


@pytest.mark.parametrize("family, kw, expected", [
    ("symmetric", {"n": 4}, 4),
    ("cyclic", {"n": 4}, 1),
    ("pgl2", {"p": 5}, 3),
    ("agl1", {"p": 5}, 2),
    ("alternating", {"n": 5}, 3),
    ("dihedral", {"n": 5}, 1),
])
def test_transitivity_degree(family, kw, expected):
    G = construct_named(family, **kw)
    assert transitivity_degree(G) == expected
    assert oracles.brute_transitivity([p.images for p in G], G.n) == expected


def test_transitivity_of_non_group_sets():
    # rows of a Latin square: transitive set, not a group
    rows = [(0, 1, 2, 3, 4), (1, 2, 3, 4, 0), (2, 4, 1, 0, 3), (3, 0, 4, 2, 1), (4, 3, 0, 1, 2)]
    D = PermSet.from_images(rows)
    assert not D.check_group()
    assert transitivity_degree(D) == oracles.brute_transitivity(rows, 5) == 1
    assert transitivity_degree(PermSet.from_images([(0, 1, 2), (1, 0, 2)])) == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 5).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))).map(tuple), min_size=1, max_size=30, unique=True)))
def test_transitivity_matches_brute_force(rows):
    D = PermSet.from_images(rows)
    assert transitivity_degree(D) == oracles.brute_transitivity(rows, D.n)
