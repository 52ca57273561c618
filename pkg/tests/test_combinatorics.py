import math
from fractions import Fraction

import pytest

from permdes.combinatorics import derangements, distance_distribution, rencontres, space_moment

import oracles


def test_derangements():
    assert derangements(0) == 1
    assert derangements(1) == 0
    assert derangements(4) == 9
    assert derangements(5) == 44
    for m in range(8):
        assert derangements(m) == oracles.brute_derangements(m)
    with pytest.raises(ValueError):
        derangements(-1)


@pytest.mark.parametrize("n, expected", [(3, (2, 3, 0, 1)), (4, (9, 8, 6, 0, 1))])
def test_rencontres_small(n, expected):
    assert rencontres(n).w == expected


@pytest.mark.parametrize("n", range(1, 9))
def test_rencontres_matches_enumeration(n):
    table = rencontres(n)
    assert list(table.w) == oracles.brute_rencontres(n)
    assert sum(table.w) == math.factorial(n)
    assert sum(k * w for k, w in enumerate(table.w)) == math.factorial(n)
    assert table.w[n] == 1
    if n >= 2:
        assert table.w[n - 1] == 0


@pytest.mark.parametrize("n", range(1, 21))
def test_rencontres_matches_generating_function(n):
    assert list(rencontres(n).w) == oracles.gf_rencontres(n)


def test_sphere_sizes_reverse_w():
    t = rencontres(4)
    assert t.sphere_sizes() == (1, 0, 6, 8, 9)
    assert sum(distance_distribution(4)) == 1


def test_space_moment_examples():
    assert space_moment(4, 0) == 1
    assert space_moment(4, 1) == 3
    assert space_moment(4, 2) == 10
    assert isinstance(space_moment(4, 2), Fraction)


@pytest.mark.parametrize("n", range(1, 16))
def test_space_moment_closed_forms(n):
    assert space_moment(n, 1) == n - 1
    if n >= 2:
        assert space_moment(n, 2) == n * n - 2 * n + 2


@pytest.mark.parametrize("n", range(2, 8))
def test_space_moment_by_enumeration(n):
    w = oracles.brute_rencontres(n)
    for i in range(n + 1):
        direct = Fraction(sum(w[n - j] * j**i for j in range(n + 1)), math.factorial(n))
        assert space_moment(n, i) == direct
