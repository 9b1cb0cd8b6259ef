"""Orbifold Euler characteristics of minimal strata of abelian differentials.

The main quantity is chi(g), the orbifold Euler characteristic of the stratum
of genus-g differentials with a single zero of order 2g-2, together with its
spin refinement chi_spin(g) = chi(even part) - chi(odd part).  Each is
computed by independent routes that must agree exactly:

- ``genfun``: coefficient extraction from a closed generating series;
- ``partition``: a sum over ordered genus decompositions weighted by top psi
  integrals and the coefficients b_g;
- ``levelgraph`` (plain chi only): a sum over two-level degenerations using
  residue-conditioned integrals and the eta power sums a_g.

``components`` splits the total into hyperelliptic / even / odd parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .combinat import OneLegTree, compositions, one_leg_trees
from .intersect import psi_top, psi_top_spin
from .residues import ResidueSignature, a_res
from .series import (
    b_sequence,
    cosh_half_series,
    monomial,
    one,
    s_prime_series,
    s_series,
    tilde_b_sequence,
    zero,
)

_ROUTES = ("genfun", "partition", "levelgraph")


@lru_cache(maxsize=None)
def _chi_genfun(g: int, spin: bool) -> Fraction:
    d = 2 * g - 1
    T = 2 * g
    s = s_series(T)
    inv_s = s.inverse()
    zs = monomial(1, T) * s
    bs = b_sequence(g)
    H = zero(T)
    n_extra = zero(T)
    for h in range(1, g + 1):
        coef = factorial(2 * h - 1) * bs[h - 1]
        if spin:
            coef *= Fraction(-(2 ** (2 * h - 1)), 2 ** (2 * h - 1) - 1)
        t_h = coef * zs.pow_int(2 * h) * s.scale_arg(2 * h - 1) * inv_s
        H = H + t_h * Fraction(1, d ** (2 * h))
        n_extra = n_extra + (2 * h) * t_h * Fraction(1, d ** (2 * h - 1))
    numerator = (d + 1) * one(T) + n_extra
    exponent = d * (monomial(1, T) * s_prime_series(T) * inv_s - H)
    chi_series = (
        numerator
        * inv_s
        * inv_s
        * exponent.exp_zero_const()
        * inv_s.pow_int(d)
        * Fraction(1, d)
    )
    if spin:
        chi_series = chi_series * cosh_half_series(T)
    value = Fraction(d) ** (2 * g - 1) * chi_series.coeff(T)
    if spin:
        value /= 2**g
    return value


def _chi_partition(g: int, spin: bool) -> Fraction:
    d = 2 * g - 1
    bs = tilde_b_sequence(g) if spin else b_sequence(g)
    psi = psi_top_spin if spin else psi_top
    total = Fraction(0)
    for gbot in range(1, g + 1):
        for n in range(0, g - gbot + 1):
            for comp in compositions(g - gbot, n):
                marks = (d,) + tuple(-(2 * gi - 1) for gi in comp)
                term = Fraction(2 * gbot * (-1) ** n, factorial(n))
                term *= Fraction(d) ** (2 * gbot - 1 + n - 1)
                term *= psi(gbot, marks)
                for gi in comp:
                    term *= factorial(2 * gi - 1) * bs[gi - 1]
                total += term
    return total


def _chi_levelgraph(g: int) -> Fraction:
    d = 2 * g - 1
    total = 2 * g * Fraction(d) ** (d - 1) * psi_top(g, (d,))
    if g == 1:
        return total
    eta = eta_sequence(g - 1)
    for gbot in range(1, g):
        for n in range(1, g - gbot + 1):
            for comp in compositions(g - gbot, n):
                poles = tuple(-(2 * gi - 1) for gi in comp)
                sig = ResidueSignature(gbot, d, poles, n - 1)
                term = Fraction(2 * gbot * (-1) ** (n + 1), factorial(n))
                term *= Fraction(d) ** (2 * gbot - 1)
                term *= a_res(sig)
                for gi in comp:
                    term *= (2 * gi - 1) * (-eta.a[gi - 1])
                total += term
    return total


def chi_min(g: int, route: str = "genfun") -> Fraction:
    """chi of the minimal stratum in genus g, by the requested route.

    >>> chi_min(1)
    Fraction(-1, 12)
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    if route == "genfun":
        return _chi_genfun(g, False)
    if route == "partition":
        return _chi_partition(g, False)
    if route == "levelgraph":
        return _chi_levelgraph(g)
    raise ValueError("unknown route %r" % route)


def chi_min_spin(g: int, route: str = "genfun") -> Fraction:
    """The even-minus-odd refinement of chi, by the requested route.

    >>> chi_min_spin(1)
    Fraction(1, 12)
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    if route == "genfun":
        return _chi_genfun(g, True)
    if route == "partition":
        return _chi_partition(g, True)
    raise ValueError("unknown route %r" % route)


def chi_hyp(g: int) -> Fraction:
    """chi of the hyperelliptic component: -1/(4g(2g+1))."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    return Fraction(-1, 4 * g * (2 * g + 1))


@dataclass(frozen=True)
class EulerResult:
    """chi of the minimal stratum split into connected components.

    ``hyp_parity`` records which spin parity the hyperelliptic component
    carries; the non-hyperelliptic entries are None where the classification
    has no such component (g <= 3).
    """

    genus: int
    chi_total: Fraction
    chi_spin: Fraction
    chi_even: Fraction
    chi_odd: Fraction
    chi_hyp: Fraction
    hyp_parity: str
    chi_nonhyp_even: Fraction | None
    chi_nonhyp_odd: Fraction | None
    route: str


def components(g: int, route: str = "genfun") -> EulerResult:
    """Split chi into components: hyperelliptic, even and odd.

    For g = 1, 2 the stratum is connected and hyperelliptic of odd parity;
    for g = 3 there are the hyperelliptic (even parity) and odd components;
    from g = 4 on there are three components, the hyperelliptic one having
    even parity in odd genus and odd parity in even genus.
    """
    total = chi_min(g, route)
    spin_route = route if route in ("genfun", "partition") else "genfun"
    spin = chi_min_spin(g, spin_route)
    even = (total + spin) / 2
    odd = (total - spin) / 2
    hyp = chi_hyp(g)
    if g <= 2:
        parity = "odd"
        nonhyp_even = nonhyp_odd = None
    elif g == 3:
        parity = "even"
        nonhyp_even = None
        nonhyp_odd = odd
    else:
        parity = "even" if g % 2 else "odd"
        nonhyp_even = even - (hyp if parity == "even" else 0)
        nonhyp_odd = odd - (hyp if parity == "odd" else 0)
    return EulerResult(
        genus=g,
        chi_total=total,
        chi_spin=spin,
        chi_even=even,
        chi_odd=odd,
        chi_hyp=hyp,
        hyp_parity=parity,
        chi_nonhyp_even=nonhyp_even,
        chi_nonhyp_odd=nonhyp_odd,
        route=route,
    )


@dataclass(frozen=True)
class EtaSequence:
    """The eta power sums a_g and their spin analogues, for g = 1..gmax.

    a_g is minus the top self-intersection of the tautological eta class on
    the projectivised minimal stratum; it is determined by the coefficient
    identity [z^(2g)] F(z)^(2g) = (2g)! b_g for F = 1 + sum (2h-1) a_h z^(2h).
    """

    gmax: int
    a: tuple
    a_spin: tuple


@lru_cache(maxsize=None)
def eta_sequence(gmax: int) -> EtaSequence:
    """Solve for a_g and a_g^spin up to the given genus.

    >>> eta_sequence(2).a
    (Fraction(-1, 24), Fraction(1, 640))
    """
    if gmax < 1:
        raise ValueError("genus bound must be at least 1")
    bs = b_sequence(gmax)
    tbs = tilde_b_sequence(gmax)
    a = []
    fcoeffs = [Fraction(1)] + [Fraction(0)] * (2 * gmax)
    from .series import TruncSeries

    for g in range(1, gmax + 1):
        partial = TruncSeries(fcoeffs[: 2 * g + 1])
        low = partial.pow_int(2 * g).coeff(2 * g)
        # the z^(2g) coefficient of F^(2g) is 2g*(2g-1)*a_g plus known data
        ag = (factorial(2 * g) * bs[g - 1] - low) / (2 * g * (2 * g - 1))
        a.append(ag)
        fcoeffs[2 * g] = (2 * g - 1) * ag
    a_spin = []
    for g in range(1, gmax + 1):
        acc = Fraction(0)
        for n in range(1, g + 1):
            for comp in compositions(g, n):
                term = Fraction((-2 * g + 1) ** (n - 1), factorial(n))
                for gi in comp:
                    term *= factorial(2 * gi - 1) * tbs[gi - 1]
                acc += term
        a_spin.append(acc / (2 * g - 1))
    return EtaSequence(gmax=gmax, a=tuple(a), a_spin=tuple(a_spin))


def regroup_tree_value(tree: OneLegTree, a_values) -> Fraction:
    """The automorphism-free weight of a one-leg tree in the regrouping sum.

    A leaf of genus h contributes (2h-1) a_h; every other vertex contributes
    -(-p)^(c-1) where p = 2*(subtree genus)-1 is its outgoing twist and c its
    number of children.
    """
    if tree.is_leaf:
        h = tree.vertex_genus
        return (2 * h - 1) * a_values[h - 1]
    p = 2 * tree.genus - 1
    value = Fraction(-((-p) ** (len(tree.children) - 1)))
    for child in tree.children:
        value *= regroup_tree_value(child, a_values)
    return value


@dataclass(frozen=True)
class RegroupReport:
    """Outcome of the regrouping identity checks."""

    gmax: int
    tree_gmax: int
    cases: int
    failures: tuple

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_regrouping(gmax: int) -> RegroupReport:
    """Check the two equivalent presentations of the a_g / b_g relation.

    (i) For g <= gmax: (2g-1) a_g equals the composition sum
    sum over (g_1..g_n) of (-2g+1)^(n-1)/n! prod (2g_i-1)! b_{g_i}.

    (ii) For g <= min(gmax, 5): (2g-1)! b_g equals the sum over one-leg
    trees of genus g of the tree weight divided by the automorphism count.
    """
    if gmax < 1:
        raise ValueError("genus bound must be at least 1")
    bs = b_sequence(gmax)
    eta = eta_sequence(gmax)
    failures = []
    cases = 0
    for g in range(1, gmax + 1):
        acc = Fraction(0)
        for n in range(1, g + 1):
            for comp in compositions(g, n):
                term = Fraction((-2 * g + 1) ** (n - 1), factorial(n))
                for gi in comp:
                    term *= factorial(2 * gi - 1) * bs[gi - 1]
                acc += term
        cases += 1
        if acc != (2 * g - 1) * eta.a[g - 1]:
            failures.append(("composition", g))
    tree_gmax = min(gmax, 5)
    for g in range(1, tree_gmax + 1):
        acc = Fraction(0)
        for tree in one_leg_trees(g):
            acc += regroup_tree_value(tree, eta.a) / tree.aut()
        cases += 1
        if acc != factorial(2 * g - 1) * bs[g - 1]:
            failures.append(("tree-sum", g))
    return RegroupReport(
        gmax=gmax, tree_gmax=tree_gmax, cases=cases, failures=tuple(failures)
    )


@dataclass(frozen=True)
class AsymptoticRow:
    """One genus worth of asymptotic observables, all exact."""

    genus: int
    chi: Fraction
    chi_spin: Fraction
    ratio_over_4: Fraction
    ratio_over_3: Fraction
    spin_ratio_g: Fraction
    spin_ratio_g2: Fraction


def asymptotic_report(gmax: int) -> list:
    """Exact asymptotic observables for g = 1..gmax.

    The ratio columns compare -chi with (2g-1)!/(2g-1)^4 and
    (2g-1)!/(2g-1)^3 (the conjectured lower and upper growth envelopes);
    the spin ratios scale chi_spin/(-chi) by 2^g/g and 2^g/g^2.
    """
    if gmax < 1:
        raise ValueError("genus bound must be at least 1")
    rows = []
    for g in range(1, gmax + 1):
        chi = _chi_genfun(g, False)
        chi_spin = _chi_genfun(g, True)
        d = 2 * g - 1
        base = Fraction(factorial(d))
        rows.append(
            AsymptoticRow(
                genus=g,
                chi=chi,
                chi_spin=chi_spin,
                ratio_over_4=-chi * d**4 / base,
                ratio_over_3=-chi * d**3 / base,
                spin_ratio_g=chi_spin / (-chi) * Fraction(2**g, g),
                spin_ratio_g2=chi_spin / (-chi) * Fraction(2**g, g * g),
            )
        )
    return rows
