"""Top psi integrals on strata with residue conditions.

``a_res`` computes A_g^{R(m)}(a0; a_1, ..., a_n), the top psi-class integral
on the closure of the stratum with one zero of order a0 - 1, poles of orders
a_i - 1 (a_i < 0), and vanishing-residue conditions imposed at the first m
poles.  Three independent routes are provided:

- ``recursion``: peel off one residue condition at a time, trading it for
  boundary terms with a genus-0 piece carrying the conditioned poles;
- ``treesum``: for the fully conditioned case m = n - 1, a finite sum over
  twisted rooted trees;
- ``genus0``: a closed product formula, valid in genus 0.

All results are exact rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from .combinat import set_partitions
from .intersect import psi_top, psi_top_spin


@dataclass(frozen=True)
class ResidueSignature:
    """Genus, zero order, pole orders and number of residue conditions.

    ``poles`` are the negative weights; the residue conditions apply to the
    first ``conditions`` of them.  The weights must satisfy
    ``zero_order + sum(poles) = 2g - 1 + n``.
    """

    genus: int
    zero_order: int
    poles: tuple
    conditions: int
    spin: bool = False

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if self.zero_order <= 0:
            raise ValueError("the zero order weight must be positive")
        if not self.poles:
            raise ValueError("at least one pole is required")
        if any(p >= 0 for p in self.poles):
            raise ValueError("pole weights must be negative")
        n = len(self.poles)
        if not 0 <= self.conditions <= n - 1:
            raise ValueError("conditions must lie between 0 and n-1")
        if self.zero_order + sum(self.poles) != 2 * self.genus - 1 + n:
            raise ValueError(
                "weights must satisfy a0 + sum(poles) = 2g - 1 + n"
            )

    @property
    def n(self) -> int:
        return len(self.poles)


def genus0_closed(sig: ResidueSignature) -> Fraction:
    """(n-2)!/(n-m-2)! * prod of the conditioned pole orders, in genus 0."""
    if sig.genus != 0:
        raise ValueError("the closed product formula is a genus 0 statement")
    n, m = sig.n, sig.conditions
    if m > n - 2:
        raise ValueError("genus 0 admits at most n-2 residue conditions")
    return Fraction(
        factorial(n - 2) * prod(-p for p in sig.poles[:m]), factorial(n - m - 2)
    )


def _psi(genus: int, marks: tuple, spin: bool) -> Fraction:
    if genus == 0:
        # A_0 is identically 1; an unstable genus-0 signature (fewer than 3
        # markings) can appear while unwinding the fully conditioned case
        # and contributes nothing.
        return Fraction(1) if len(marks) >= 3 else Fraction(0)
    return psi_top_spin(genus, marks) if spin else psi_top(genus, marks)


@lru_cache(maxsize=None)
def _a_res_recursion(genus: int, a0: int, poles: tuple, m: int, spin: bool) -> Fraction:
    if m == 0:
        return _psi(genus, (a0,) + poles, spin)
    n = len(poles)
    total = -a0 * _a_res_recursion(genus, a0, poles, m - 1, spin)
    conditioned = list(range(m - 1))  # conditioned poles other than the m-th
    for j in range(m, n):
        for r in range(len(conditioned) + 1):
            for subset in itertools.combinations(conditioned, r):
                moved = set(subset) | {j}
                weight = -poles[m - 1] - sum(poles[i] - 1 for i in moved)
                # the connecting weight is automatically positive
                piece_poles = tuple(poles[i] for i in subset) + (
                    poles[m - 1],
                    poles[j],
                )
                piece = ResidueSignature(0, weight, piece_poles, r, spin)
                rest_poles = (
                    tuple(poles[i] for i in range(m - 1) if i not in moved)
                    + tuple(poles[i] for i in range(m, n) if i != j)
                    + (-weight,)
                )
                total += (
                    weight
                    * genus0_closed(piece)
                    * _a_res_recursion(genus, a0, rest_poles, m - 1 - r, spin)
                )
    return total


@dataclass(frozen=True)
class TreeVertex:
    """A vertex of a twisted rooted tree: pole leg indices plus subtrees."""

    legs: tuple
    children: tuple

    @property
    def valence(self) -> int:
        # legs, downward edges, plus the upward edge or the zero leg at the root
        return len(self.legs) + len(self.children) + 1


@dataclass(frozen=True)
class TwistedTree:
    """A rooted tree distributing the poles of a residue signature.

    The root carries the zero of order ``zero_order - 1`` and the genus; all
    other vertices have genus 0.  ``poles`` lists the pole weights; each leg
    index refers into it.  Edge twists are determined by the weights.
    """

    genus: int
    zero_order: int
    poles: tuple
    root: TreeVertex


def _upward(tree: TwistedTree, v: TreeVertex) -> int:
    """Positive weight flowing up out of a non-root vertex."""
    return (
        v.valence
        - 2
        - sum(tree.poles[i] for i in v.legs)
        + sum(_upward(tree, c) for c in v.children)
    )


def tree_weight(tree: TwistedTree, spin: bool = False) -> Fraction:
    """The summand attached to one twisted tree.

    The root vertex contributes minus the top psi integral with weights
    (a0, its pole legs, minus the upward weights of its subtrees); every
    vertex contributes a power of its outgoing weight.
    """
    root = tree.root
    marks = (
        (tree.zero_order,)
        + tuple(tree.poles[i] for i in root.legs)
        + tuple(-_upward(tree, c) for c in root.children)
    )
    value = -_psi(tree.genus, marks, spin)

    def factor(v: TreeVertex, is_root: bool) -> Fraction:
        nv = v.valence
        if is_root:
            if nv == 1:
                f = Fraction(-1, tree.zero_order)
            else:
                f = Fraction(-((-tree.zero_order) ** (nv - 2)))
        else:
            p = _upward(tree, v)
            f = Fraction(-((-p) ** (nv - 2)))
        for c in v.children:
            f *= factor(c, False)
        return f

    return value * factor(root, True)


def _gen0_subtrees(pole_indices: tuple, poles: tuple):
    """All rooted genus-0 subtrees carrying exactly the given poles."""
    idx = list(pole_indices)
    out = []
    n = len(idx)
    for mask in range(1 << n):
        legs = tuple(idx[i] for i in range(n) if mask >> i & 1)
        rest = [idx[i] for i in range(n) if not mask >> i & 1]
        for blocks in set_partitions(rest):
            if len(legs) + len(blocks) + 1 < 3:
                continue
            options = [_gen0_subtrees(block, poles) for block in blocks]
            for children in itertools.product(*options):
                out.append(TreeVertex(legs, tuple(children)))
    return out


def enumerate_tr(genus: int, zero_order: int, poles: tuple) -> list:
    """All twisted rooted trees for the fully conditioned signature.

    Poles are labelled, so trees carry no automorphisms.  Upward weights are
    positive automatically since all pole weights are negative; the validity
    constraints are only the valence bounds (non-root vertices need valence
    at least 3, and so does a genus 0 root).

    >>> len(enumerate_tr(1, 5, (-1, -1)))
    2
    """
    poles = tuple(poles)
    n = len(poles)
    if zero_order <= 0:
        raise ValueError("the zero order weight must be positive")
    if any(p >= 0 for p in poles):
        raise ValueError("pole weights must be negative")
    if zero_order + sum(poles) != 2 * genus - 1 + n:
        raise ValueError("weights must satisfy a0 + sum(poles) = 2g - 1 + n")
    idx = list(range(n))
    trees = []
    for mask in range(1 << n):
        legs = tuple(idx[i] for i in range(n) if mask >> i & 1)
        rest = [idx[i] for i in range(n) if not mask >> i & 1]
        for blocks in set_partitions(rest):
            root_valence = len(legs) + len(blocks) + 1
            if genus == 0 and root_valence < 3:
                continue
            options = [_gen0_subtrees(block, poles) for block in blocks]
            for children in itertools.product(*options):
                trees.append(
                    TwistedTree(
                        genus, zero_order, poles, TreeVertex(legs, tuple(children))
                    )
                )
    return trees


def a_res(sig: ResidueSignature, method: str = "recursion") -> Fraction:
    """A_g^{R(m)} for the given signature, by the requested method.

    >>> a_res(ResidueSignature(1, 5, (-1, -1), 1))
    Fraction(5, 12)
    """
    if method == "recursion":
        return _a_res_recursion(
            sig.genus, sig.zero_order, sig.poles, sig.conditions, sig.spin
        )
    if method == "treesum":
        if sig.conditions != sig.n - 1:
            raise ValueError("the tree sum requires all n-1 residue conditions")
        return sum(
            (
                tree_weight(t, sig.spin)
                for t in enumerate_tr(sig.genus, sig.zero_order, sig.poles)
            ),
            Fraction(0),
        )
    if method == "genus0":
        return genus0_closed(sig)
    raise ValueError("unknown method %r" % method)
