import itertools
from fractions import Fraction
from math import comb

import pytest

from minstrata.combinat import (
    OneLegTree,
    compositions,
    lagrange_coefficients,
    lagrange_value,
    odd_sum_extrapolate,
    one_leg_trees,
    set_partitions,
    sf_sum,
    verify_sf_odd,
)


def test_compositions_examples():
    assert list(compositions(2, 2, "genus")) == [(1, 1)]
    assert list(compositions(4, 2, "odd-positive")) == [(1, 3), (3, 1)]
    assert list(compositions(0, 0)) == [()]
    assert list(compositions(1, 0)) == []


def test_compositions_counts_stars_and_bars():
    for total in range(1, 13):
        for length in range(1, 7):
            got = list(compositions(total, length))
            assert len(got) == comb(total - 1, length - 1)
            assert got == sorted(got)
            assert len(set(got)) == len(got)


def test_compositions_match_brute_force():
    for total in range(0, 11):
        for length in range(0, 5):
            brute = [
                t
                for t in itertools.product(range(1, total + 1), repeat=length)
                if sum(t) == total
            ] if length else ([()] if total == 0 else [])
            assert list(compositions(total, length)) == sorted(brute)
            brute_odd = [t for t in brute if all(p % 2 for p in t)]
            assert list(compositions(total, length, "odd-positive")) == sorted(
                brute_odd
            )


def test_compositions_unknown_constraint():
    with pytest.raises(ValueError):
        list(compositions(2, 1, "nonsense"))


def test_sf_sum_values():
    assert sf_sum(1, 3) == 4
    assert sf_sum(1, 4) == 10
    assert sf_sum(2, 0) == 0
    with pytest.raises(ValueError):
        sf_sum(0, 3)


def test_verify_sf_odd():
    report = verify_sf_odd(5, 40)
    assert report.passed


def test_lagrange():
    pts = [(0, Fraction(1)), (1, Fraction(2)), (2, Fraction(5))]
    # the parabola x^2 + 1
    assert lagrange_value(pts, 3) == 10
    assert lagrange_coefficients(pts) == [Fraction(1), Fraction(0), Fraction(1)]


def test_odd_sum_extrapolate_closed_cases():
    assert odd_sum_extrapolate(lambda j: Fraction(j), 1, 1) == 0
    # ordered odd pairs summing to even b number b/2
    assert odd_sum_extrapolate(lambda j, l: Fraction(1), 2, 1) == 0
    # ordered odd triples summing to odd b number ((b-1)/2 choose 2)
    assert odd_sum_extrapolate(lambda j, l, m: Fraction(1), 3, 2) == Fraction(-1, 8)


def test_odd_sum_extrapolate_reproduces_samples():
    def ev(j, l):
        return Fraction(j * j * l)

    pts = []
    for b in (2, 4, 6, 8, 10, 12):
        total = sum(ev(*t) for t in compositions(b, 2, "odd-positive"))
        pts.append((b, total))
    # the interpolation through the extrapolation grid must match every sample
    value = odd_sum_extrapolate(ev, 2, 3)
    assert value == lagrange_value(pts, 0)
    # and adding slack to the degree bound must not change the answer
    assert value == odd_sum_extrapolate(ev, 2, 6)


def test_set_partitions():
    parts = list(set_partitions([1, 2, 3]))
    assert len(parts) == 5
    canon = {tuple(sorted(tuple(sorted(b)) for b in p)) for p in parts}
    assert len(canon) == 5


def test_one_leg_trees_small():
    t1 = one_leg_trees(1)
    assert len(t1) == 1 and t1[0].is_leaf and t1[0].aut() == 1
    t2 = one_leg_trees(2)
    assert len(t2) == 2
    nontrivial = [t for t in t2 if not t.is_leaf]
    assert len(nontrivial) == 1
    assert nontrivial[0].aut() == 2
    assert [c.genus for c in nontrivial[0].children] == [1, 1]


def brute_force_aut(tree: OneLegTree) -> int:
    """Count child orderings that reproduce the same canonical tree."""
    if tree.is_leaf:
        return 1
    total = 0
    for perm in itertools.permutations(tree.children):
        if perm == tree.children:
            total += 1
    prod = 1
    for c in tree.children:
        prod *= brute_force_aut(c)
    return total * prod


def test_aut_matches_brute_force():
    for g in (1, 2, 3):
        for tree in one_leg_trees(g):
            assert tree.aut() == brute_force_aut(tree)


def test_one_leg_trees_genus_sums():
    for g in (2, 3, 4):
        for tree in one_leg_trees(g):
            assert tree.genus == g
            for leaf in tree.leaves():
                assert leaf.vertex_genus > 0
