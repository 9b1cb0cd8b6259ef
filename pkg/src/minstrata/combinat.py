"""Enumerative combinatorics: compositions, exact polynomial extrapolation of
sums over odd compositions, and rooted one-leg trees with automorphisms.

Everything here is exact; interpolation is done with rational Lagrange
arithmetic, never floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

_CONSTRAINTS = ("positive", "odd-positive", "genus")


def compositions(total: int, length: int, constraint: str = "positive") -> Iterator[tuple]:
    """All ordered tuples of the given length summing to ``total``.

    ``constraint`` selects the allowed parts: ``positive`` and ``genus`` both
    mean integers >= 1 (the latter name is used when the parts are genera of
    stable pieces), ``odd-positive`` means odd integers >= 1.  Tuples are
    produced in lexicographic order.

    >>> list(compositions(4, 2, "odd-positive"))
    [(1, 3), (3, 1)]
    """
    if constraint not in _CONSTRAINTS:
        raise ValueError("unknown constraint %r" % constraint)
    odd = constraint == "odd-positive"
    yield from _compositions(total, length, odd)


def _compositions(total: int, length: int, odd: bool) -> Iterator[tuple]:
    if length == 0:
        if total == 0:
            yield ()
        return
    step = 2 if odd else 1
    # smallest remaining sum for length-1 more parts
    floor = length - 1
    first = 1
    while first + floor <= total:
        for rest in _compositions(total - first, length - 1, odd):
            yield (first,) + rest
        first += step


def sf_sum(f: int, c: int) -> Fraction:
    """S_f(c) = sum over b1+b2=c, b1,b2>=1 of (b1*b2)^f.

    >>> sf_sum(1, 4)
    Fraction(10, 1)
    """
    if f < 1:
        raise ValueError("the exponent must be at least 1")
    if c < 0:
        raise ValueError("the target sum must be non-negative")
    return Fraction(sum((b * (c - b)) ** f for b in range(1, c)))


def lagrange_value(points: Sequence[tuple], x) -> Fraction:
    """Evaluate at x the unique polynomial through the given (xi, yi) points."""
    x = Fraction(x)
    total = Fraction(0)
    for i, (xi, yi) in enumerate(points):
        term = Fraction(yi)
        for j, (xj, _) in enumerate(points):
            if i != j:
                term *= Fraction(x - xj, xi - xj)
        total += term
    return total


def lagrange_coefficients(points: Sequence[tuple]) -> list:
    """Coefficients (low degree first) of the interpolating polynomial."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        # numerator polynomial prod_{j != i} (x - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            denom *= xi - xj
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= xj * basis[d + 1]
        scale = Fraction(yi) / denom
        for d, c in enumerate(basis):
            coeffs[d] += scale * c
    return coeffs


@dataclass(frozen=True)
class OddSumReport:
    """Result of checking the polynomiality of the two-part odd power sums."""

    f_max: int
    c_max: int
    cases: int
    failures: tuple

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_sf_odd(f_max: int, c_max: int) -> OddSumReport:
    """Check that S_f(c) is an odd polynomial in c of degree 2f+1.

    For each f <= f_max the polynomial is recovered by interpolation from
    the first 2f+3 sample points, its even-degree coefficients are required
    to vanish, and its values are compared against the direct sums for all
    c <= c_max.
    """
    failures = []
    cases = 0
    for f in range(1, f_max + 1):
        deg = 2 * f + 1
        pts = [(c, sf_sum(f, c)) for c in range(0, deg + 2)]
        coeffs = lagrange_coefficients(pts)
        for d in range(0, len(coeffs), 2):
            cases += 1
            if coeffs[d] != 0:
                failures.append(("even-coefficient", f, d))
        for c in range(0, c_max + 1):
            cases += 1
            if lagrange_value(pts, c) != sf_sum(f, c):
                failures.append(("value", f, c))
            cases += 1
            if lagrange_value(pts, -c) != -sf_sum(f, c):
                failures.append(("odd-symmetry", f, c))
    return OddSumReport(f_max=f_max, c_max=c_max, cases=cases, failures=tuple(failures))


def odd_sum_extrapolate(
    evaluator: Callable[..., Fraction], m: int, degree_bound: int
) -> Fraction:
    """Value at 0 of the polynomial b -> sum over odd positive m-tuples
    summing to b of ``evaluator(tuple)``.

    The sum is only defined for b >= m with b = m (mod 2); it agrees with a
    polynomial of degree at most ``degree_bound`` there, which is what makes
    the extrapolation to b = 0 meaningful.  ``degree_bound + m + 1`` sample
    points are used.
    """
    if m < 1:
        raise ValueError("need at least one part")
    pts = []
    b = m
    for _ in range(degree_bound + m + 1):
        val = sum(
            (evaluator(*parts) for parts in compositions(b, m, "odd-positive")),
            Fraction(0),
        )
        pts.append((b, val))
        b += 2
    return lagrange_value(pts, 0)


def set_partitions(items: Sequence) -> Iterator[list]:
    """All partitions of ``items`` into unordered nonempty blocks.

    Blocks are tuples; the block containing the first item comes first.
    """
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    n = len(rest)
    for mask in range(1 << n):
        block = (first,) + tuple(rest[i] for i in range(n) if mask >> i & 1)
        remainder = [rest[i] for i in range(n) if not mask >> i & 1]
        for tail in set_partitions(remainder):
            yield [block] + tail


@dataclass(frozen=True)
class OneLegTree:
    """A rooted tree whose vertices carry genera, used for regrouping sums.

    A leaf of genus h stands for a one-leg vertex of genus h; an internal
    vertex always has genus 0 and at least two children.  ``genus`` is the
    total genus carried by the subtree.
    """

    vertex_genus: int
    children: tuple

    @property
    def genus(self) -> int:
        return self.vertex_genus + sum(c.genus for c in self.children)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def aut(self) -> int:
        """Order of the automorphism group fixing the root."""
        total = 1
        run = 0
        prev = None
        for child in self.children:
            total *= child.aut()
            run = run + 1 if child == prev else 1
            prev = child
            if run > 1:
                total *= run
        return total

    def leaves(self) -> list:
        if self.is_leaf:
            return [self]
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return out

    def sort_key(self):
        return (self.genus, self.vertex_genus, tuple(c.sort_key() for c in self.children))


@lru_cache(maxsize=None)
def one_leg_trees(genus: int) -> tuple:
    """All one-leg trees of the given total genus, up to isomorphism.

    The trivial tree is the single leaf of that genus; nontrivial trees have
    a genus-0 root with at least two children, each itself a one-leg tree of
    positive genus.  Children are stored in canonical sorted order so equal
    trees compare equal.

    >>> len(one_leg_trees(2))
    2
    """
    if genus < 1:
        raise ValueError("genus must be positive")
    out = [OneLegTree(genus, ())]
    pool = []
    for h in range(1, genus):
        pool.extend(one_leg_trees(h))
    pool.sort(key=OneLegTree.sort_key)

    def choose(start: int, remaining: int, chosen: list):
        if remaining == 0:
            if len(chosen) >= 2:
                out.append(OneLegTree(0, tuple(chosen)))
            return
        for i in range(start, len(pool)):
            t = pool[i]
            if t.genus <= remaining:
                choose(i, remaining - t.genus, chosen + [t])

    choose(0, genus, [])
    out.sort(key=OneLegTree.sort_key)
    return tuple(out)
