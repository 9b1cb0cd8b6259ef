import itertools
import random
from fractions import Fraction

import pytest

from minstrata.intersect import psi_top
from minstrata.residues import (
    ResidueSignature,
    a_res,
    enumerate_tr,
    genus0_closed,
    tree_weight,
)


def test_signature_validation():
    with pytest.raises(ValueError):
        ResidueSignature(1, -5, (-1, -1), 1)
    with pytest.raises(ValueError):
        ResidueSignature(1, 5, (1, -1), 0)
    with pytest.raises(ValueError):
        ResidueSignature(1, 5, (-1, -1), 2)  # m > n-1
    with pytest.raises(ValueError):
        ResidueSignature(1, 4, (-1, -1), 1)  # weight balance off
    with pytest.raises(ValueError):
        ResidueSignature(1, 5, (), 0)


def test_genus0_closed_examples():
    assert genus0_closed(ResidueSignature(0, 5, (-1, -1, -1), 1)) == 1
    assert genus0_closed(ResidueSignature(0, 8, (-2, -1, -1, -1), 2)) == 4
    with pytest.raises(ValueError):
        genus0_closed(ResidueSignature(1, 5, (-1, -1), 1))


def test_recursion_hand_value():
    sig = ResidueSignature(1, 5, (-1, -1), 1)
    # -5*A_1(5,-1,-1) + 3*A_0(3,-1,-1)*A_1(5,-3) = -35/24 + 45/24
    assert a_res(sig) == Fraction(5, 12)
    assert -5 * psi_top(1, (5, -1, -1)) == Fraction(-35, 24)
    assert a_res(sig, "treesum") == Fraction(5, 12)


def test_no_conditions_is_psi_top():
    sig = ResidueSignature(2, 8, (-2, -1), 0)
    assert a_res(sig) == psi_top(2, (8, -2, -1))


def test_enumerate_tr_counts():
    assert len(enumerate_tr(1, 1, ())) == 1
    assert len(enumerate_tr(1, 5, (-1, -1))) == 2
    # matches the number of stable terms from fully unwinding the recursion
    assert len(enumerate_tr(0, 5, (-1, -1, -1))) == 4


def test_trivial_tree_weight_minimal():
    (tree,) = enumerate_tr(1, 1, ())
    # the one-vertex no-pole tree carries the value psi_top(a0)/a0
    assert tree_weight(tree) == psi_top(1, (1,)) / 1


def test_single_vertex_tree_weight():
    trees = enumerate_tr(1, 5, (-1, -1))
    trivial = [t for t in trees if not t.root.children]
    assert len(trivial) == 1
    # F of a single vertex with all poles at the root: -(-a0)^(n+1-2)
    assert tree_weight(trivial[0]) == -psi_top(1, (5, -1, -1)) * (-(-5))


def test_route_agreement_exhaustive():
    for g in range(0, 4):
        for n in range(1, 5):
            for poles in itertools.product(range(-5, 0), repeat=n):
                zero_order = 2 * g - 1 + n - sum(poles)
                sig = ResidueSignature(g, zero_order, poles, n - 1)
                assert a_res(sig, "recursion") == a_res(sig, "treesum"), sig


def test_genus0_oracle_random():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(2, 7)
        m = rng.randint(0, n - 2)
        poles = tuple(-rng.randint(1, 5) for _ in range(n))
        sig = ResidueSignature(0, -1 + n - sum(poles), poles, m)
        assert a_res(sig, "recursion") == a_res(sig, "genus0")


def test_label_symmetry():
    rng = random.Random(4)
    for _ in range(50):
        g = rng.randint(1, 2)
        n = rng.randint(2, 4)
        poles = tuple(-rng.randint(1, 4) for _ in range(n))
        zero_order = 2 * g - 1 + n - sum(poles)
        shuffled = list(poles)
        rng.shuffle(shuffled)
        a = a_res(ResidueSignature(g, zero_order, poles, n - 1))
        b = a_res(ResidueSignature(g, zero_order, tuple(shuffled), n - 1))
        assert a == b


def test_spin_route_agreement():
    for g in (1, 2):
        for poles in ((-1, -1), (-2, -1), (-1, -1, -1)):
            n = len(poles)
            zero_order = 2 * g - 1 + n - sum(poles)
            sig = ResidueSignature(g, zero_order, poles, n - 1, spin=True)
            assert a_res(sig, "recursion") == a_res(sig, "treesum")


def test_method_preconditions():
    sig = ResidueSignature(1, 5, (-1, -1), 0)
    with pytest.raises(ValueError):
        a_res(sig, "treesum")  # needs m = n-1
    with pytest.raises(ValueError):
        a_res(sig, "genus0")  # needs genus 0
    with pytest.raises(ValueError):
        a_res(sig, "bogus")
