"""Top psi-class integrals on twisted double ramification cycles.

``psi_top(g, a)`` evaluates the polynomial A_g(a_1, ..., a_n), the integral
of psi_1^(2g-3+n) against the twisted DR cycle with weight vector ``a``;
``psi_top_spin`` is the spin-parity refinement.  Both are extracted as a
single coefficient of an explicit generating series in exact arithmetic.

The ``check_*`` functions verify the identities these polynomials satisfy
(forgetting a marking, splitting off a genus, restriction to average
weight zero) and return exact booleans, never approximations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .combinat import odd_sum_extrapolate
from .series import (
    TruncSeries,
    cosh_half_series,
    monomial,
    s_prime_series,
    s_series,
)


@dataclass(frozen=True)
class Signature:
    """A genus together with an ordered integer weight vector.

    The first entry plays a distinguished role (the psi class is taken at
    the first marking); the remaining entries may be permuted freely.
    """

    genus: int
    marks: tuple

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if len(self.marks) < 1:
            raise ValueError("at least one marking is required")
        if 2 * self.genus - 2 + len(self.marks) <= 0:
            raise ValueError("unstable signature (2g-2+n must be positive)")
        object.__setattr__(self, "marks", tuple(Fraction(m) for m in self.marks))

    @property
    def n(self) -> int:
        return len(self.marks)

    @property
    def k(self) -> Fraction:
        """The average weight sum(a) / (2g-2+n)."""
        return Fraction(sum(self.marks), 2 * self.genus - 2 + self.n)


def _marks_key(marks) -> tuple:
    return tuple(Fraction(m) for m in marks)


@lru_cache(maxsize=None)
def _psi_top(genus: int, marks: tuple, spin: bool) -> Fraction:
    n = len(marks)
    if genus == 0:
        return Fraction(1)
    k = Fraction(sum(marks), 2 * genus - 2 + n)
    T = 2 * genus
    s = s_series(T)
    sk = s.scale_arg(k)
    arg = marks[0] * monomial(1, T) * s_prime_series(T).scale_arg(k) * sk.inverse()
    num = arg.exp_zero_const()
    for a in marks[1:]:
        num = num * s.scale_arg(a)
    if spin:
        num = num * cosh_half_series(T)
    den = s * sk.pow_int(2 * genus - 1 + n)
    value = (num * den.inverse()).coeff(T)
    if spin:
        value /= 2**genus
    return value


def psi_top(genus: int, marks) -> Fraction:
    """A_g(a_1, ..., a_n) as an exact rational.

    >>> psi_top(1, (1,))
    Fraction(-1, 24)
    """
    sig = Signature(genus, tuple(marks))
    return _psi_top(sig.genus, sig.marks, False)


def psi_top_spin(genus: int, marks) -> Fraction:
    """The spin refinement A_g^spin(a_1, ..., a_n).

    >>> psi_top_spin(1, (1,))
    Fraction(1, 24)
    """
    sig = Signature(genus, tuple(marks))
    return _psi_top(sig.genus, sig.marks, True)


def _eval(genus: int, marks, spin: bool) -> Fraction:
    return _psi_top(genus, _marks_key(marks), spin)


def a1_reference(marks) -> Fraction:
    """Independent closed form for genus 1: (-1 + sum_{i>=2} (a_i-k)^2)/24."""
    sig = Signature(1, tuple(marks))
    k = sig.k
    return Fraction(-1 + sum((a - k) ** 2 for a in sig.marks[1:]), 1) / 24


def a1_spin_reference(marks) -> Fraction:
    """Genus 1 spin values from plain values, for odd weights and odd k.

    A_1^spin(a) = A_1(a) - 2 A_1((a-k)/2) where (a_i-k)/2 are integers
    summing to zero.  Only valid when every a_i and k are odd.
    """
    sig = Signature(1, tuple(marks))
    k = sig.k
    if k.denominator != 1 or k.numerator % 2 == 0:
        raise ValueError("k must be an odd integer")
    if any(a.denominator != 1 or a.numerator % 2 == 0 for a in sig.marks):
        raise ValueError("all weights must be odd integers")
    halved = tuple((a - k) / 2 for a in sig.marks)
    return psi_top(1, sig.marks) - 2 * psi_top(1, halved)


def check_forgetful(genus: int, marks, spin: bool = False) -> bool:
    """A_g(a, k) = A_g(a) where k is the average weight of a."""
    sig = Signature(genus, tuple(marks))
    return _eval(genus, sig.marks + (sig.k,), spin) == _eval(genus, sig.marks, spin)


def _splitting_k(genus: int, marks) -> int:
    k = Fraction(sum(Fraction(m) for m in marks), 2 * genus - 2 + len(marks) + 1)
    if k.denominator != 1 or k < 0:
        raise ValueError(
            "splitting requires the extended average weight to be a"
            " non-negative integer, got %s" % k
        )
    return k.numerator


def check_splitting(genus: int, marks) -> bool:
    """The two-term degeneration identity.

    With k = sum(a)/(2g-2+n+1) a non-negative integer:

        a_1 A_g(a, 0) + sum_{i>1} (a_i - k) A_g(..., a_i - k, ...)
            = (1/2) sum_{0<j<k} j(k-j) A_{g-1}(a, -j, j-k)
    """
    if genus < 1:
        raise ValueError("splitting needs genus at least 1")
    marks = _marks_key(marks)
    k = _splitting_k(genus, marks)
    lhs = marks[0] * _eval(genus, marks + (Fraction(0),), False)
    for i in range(1, len(marks)):
        replaced = marks[:i] + (marks[i] - k,) + marks[i + 1 :]
        lhs += (marks[i] - k) * _eval(genus, replaced, False)
    rhs = Fraction(0)
    for j in range(1, k):
        rhs += Fraction(j * (k - j), 2) * _eval(
            genus - 1, marks + (Fraction(-j), Fraction(j - k)), False
        )
    return lhs == rhs


def check_spin_splitting(genus: int, marks) -> bool:
    """The spin version of the degeneration identity.

    Requires all weights even and k = sum(a)/(2g-2+n+1) an even non-negative
    integer; the genus-lowering sum runs over odd j only.
    """
    if genus < 1:
        raise ValueError("splitting needs genus at least 1")
    marks = _marks_key(marks)
    if any(a.denominator != 1 or a.numerator % 2 for a in marks):
        raise ValueError("all weights must be even integers")
    k = _splitting_k(genus, marks)
    if k % 2:
        raise ValueError("the extended average weight must be even, got %d" % k)
    lhs = marks[0] * _eval(genus, marks + (Fraction(0),), True)
    for i in range(1, len(marks)):
        replaced = marks[:i] + (marks[i] - k,) + marks[i + 1 :]
        lhs += (marks[i] - k) * _eval(genus, replaced, True)
    rhs = Fraction(0)
    for j in range(1, k, 2):
        rhs += Fraction(j * (k - j), 2) * _eval(
            genus - 1, marks + (Fraction(-j), Fraction(j - k)), True
        )
    return lhs == rhs


def check_k0(genus: int, marks, variant: str = "excl-first") -> bool:
    """Restriction to total weight zero against the product formula.

    For sum(a) = 0:  A_g(a) = [z^(2g)] prod S(a_i z) / S(z), where the
    canonical ``excl-first`` variant takes the product over i >= 2.  The
    ``all-marks`` variant includes i = 1 in the product; it is kept for
    comparison and is expected to fail for n >= 2.
    """
    if variant not in ("excl-first", "all-marks"):
        raise ValueError("unknown variant %r" % variant)
    marks = _marks_key(marks)
    if sum(marks):
        raise ValueError("total weight must be zero")
    T = 2 * genus
    s = s_series(T)
    prod = s.inverse()
    skip_first = variant == "excl-first"
    for a in marks[1:] if skip_first else marks:
        prod = prod * s.scale_arg(a)
    return _eval(genus, marks, False) == prod.coeff(T)


def r_term(genus: int, marks) -> Fraction:
    """The extrapolated three-part correction term in the spin k=0 identity.

    Value at b = 0 of the polynomial extending

        (1/6) sum over odd j, l, m of equal sign with j+l+m = b of
        j*l*m * A_{g-2}^spin(a, j, l, m).

    For positive b the same-sign condition forces all three parts positive,
    so the sampling runs over positive triples.  Identically zero for
    genus < 2.
    """
    if genus < 2:
        return Fraction(0)
    marks = _marks_key(marks)

    def evaluator(j, l, m):
        return j * l * m * _eval(genus - 2, marks + (Fraction(j), Fraction(l), Fraction(m)), True)

    return Fraction(1, 6) * odd_sum_extrapolate(evaluator, 3, 2 * genus + 1)


def check_spin_k0(genus: int, marks):
    """The weight-zero spin identity; returns (holds, correction_term).

    For even weights summing to zero:

        (2g-2+n) a_1 A_g^spin(a)
          = - sum_{j>i>1} (a_i+a_j) A_g^spin(..., a_i and a_j removed, a_i+a_j)
            - (1/2) sum_{i>1} sum_{j,l odd, jl>0, j+l=a_i}
                  sign(a_i) j*l * A_{g-1}^spin(..., a_i removed, j, l)
            + R(a)

    with R(a) the extrapolated term from :func:`r_term`.
    """
    marks = _marks_key(marks)
    if sum(marks):
        raise ValueError("total weight must be zero")
    if any(a.denominator != 1 or a.numerator % 2 for a in marks):
        raise ValueError("all weights must be even integers")
    n = len(marks)
    lhs = (2 * genus - 2 + n) * marks[0] * _eval(genus, marks, True)
    rhs = Fraction(0)
    for i in range(1, n):
        for j in range(i + 1, n):
            merged = tuple(marks[t] for t in range(n) if t not in (i, j))
            merged += (marks[i] + marks[j],)
            rhs -= (marks[i] + marks[j]) * _eval(genus, merged, True)
    if genus >= 1:
        for i in range(1, n):
            ai = marks[i].numerator
            sign = 1 if ai > 0 else -1
            dropped = marks[:i] + marks[i + 1 :]
            for j in range(sign, ai, 2 * sign):
                l = ai - j
                if j * l <= 0:
                    continue
                rhs -= Fraction(sign * j * l, 2) * _eval(
                    genus - 1, dropped + (Fraction(j), Fraction(l)), True
                )
    correction = r_term(genus, marks)
    rhs += correction
    return lhs == rhs, correction
