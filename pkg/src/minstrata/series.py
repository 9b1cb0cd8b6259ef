"""Truncated power series with exact rational coefficients.

A :class:`TruncSeries` is an immutable polynomial truncation
``c_0 + c_1 z + ... + c_T z^T`` with ``c_i`` a ``fractions.Fraction``.
Requesting a coefficient beyond the truncation order is an error, never a
silent zero.  Binary operations truncate to the smaller of the two orders.

The module also provides the hyperbolic series used throughout:

    S(z)  = sinh(z/2) / (z/2)   = sum_m z^(2m) / (4^m (2m+1)!)
    S'(z) = d/dz S(z)
    cosh(z/2)                   = sum_m z^(2m) / (4^m (2m)!)

together with the coefficient sequences b_g = [z^(2g)] 1/S(z) and their
spin-weighted variant.

>>> s = s_series(4)
>>> s.coeff(2)
Fraction(1, 24)
>>> b_sequence(2)
[Fraction(-1, 24), Fraction(7, 5760)]
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError("expected an exact rational, got %r" % (x,))


def format_rational(x) -> str:
    """Render an exact rational as ``p/q`` in lowest terms, ``p`` if q is 1.

    >>> format_rational(Fraction(-7, 5760))
    '-7/5760'
    >>> format_rational(Fraction(4, 2))
    '2'
    """
    x = _as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def parse_rational(text: str) -> Fraction:
    """Parse the ``p/q`` format produced by :func:`format_rational`."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def decimal_string(x, sig: int = 12) -> str:
    """Scientific-notation decimal rendering of an exact rational.

    Computed with integer arithmetic only (round half away from zero);
    floating point is never involved.

    >>> decimal_string(Fraction(-1, 12), 6)
    '-8.33333e-2'
    """
    x = _as_fraction(x)
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    num, den = abs(x.numerator), x.denominator
    e = len(str(num)) - len(str(den))
    while 10**max(e, 0) * den > num * 10**max(-e, 0):
        e -= 1
    while 10 ** max(e + 1, 0) * den <= num * 10**max(-e - 1, 0):
        e += 1
    shift = sig - 1 - e
    if shift >= 0:
        digits = (2 * num * 10**shift + den) // (2 * den)
    else:
        scaled_den = den * 10**(-shift)
        digits = (2 * num + scaled_den) // (2 * scaled_den)
    s = str(digits)
    if len(s) > sig:
        e += 1
        s = s[:sig]
    mantissa = s[0] + ("." + s[1:] if sig > 1 else "")
    return "%s%se%d" % (sign, mantissa, e)


class TruncSeries:
    """An exact power series truncated at a fixed order.

    Instances are immutable; every operation returns a new series.  The
    truncation order of the result of a binary operation is the minimum of
    the orders of the operands.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence):
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self._coeffs = tuple(_as_fraction(c) for c in coeffs)

    @property
    def order(self) -> int:
        """The truncation order T; coefficients 0..T are known."""
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    def coeff(self, n: int) -> Fraction:
        """The coefficient of z^n.  n must not exceed the truncation order."""
        if n < 0:
            raise IndexError("negative exponent %d" % n)
        if n > self.order:
            raise IndexError(
                "coefficient %d requested from a series truncated at order %d"
                % (n, self.order)
            )
        return self._coeffs[n]

    def truncate(self, order: int) -> "TruncSeries":
        """The same series truncated at a (not larger) order."""
        if order > self.order:
            raise ValueError(
                "cannot extend a series truncated at order %d to order %d"
                % (self.order, order)
            )
        return TruncSeries(self._coeffs[: order + 1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        terms = ", ".join(format_rational(c) for c in self._coeffs)
        return "TruncSeries([%s])" % terms

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        T = min(self.order, other.order)
        return TruncSeries(
            [self._coeffs[n] + other._coeffs[n] for n in range(T + 1)]
        )

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        T = min(self.order, other.order)
        return TruncSeries(
            [self._coeffs[n] - other._coeffs[n] for n in range(T + 1)]
        )

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self._coeffs])

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            return TruncSeries([c * a for a in self._coeffs])
        T = min(self.order, other.order)
        a, b = self._coeffs, other._coeffs
        out = [_ZERO] * (T + 1)
        for i in range(min(len(a), T + 1)):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(min(len(b), T + 1 - i)):
                if b[j]:
                    out[i + j] += ai * b[j]
        return TruncSeries(out)

    __rmul__ = __mul__

    def pow_int(self, e: int) -> "TruncSeries":
        """Integer power by binary powering; negative e inverts first."""
        if e < 0:
            return self.inverse().pow_int(-e)
        result = one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def inverse(self) -> "TruncSeries":
        """The multiplicative inverse; the constant term must be nonzero."""
        a = self._coeffs
        if a[0] == 0:
            raise ValueError("series with constant term 0 has no inverse")
        T = self.order
        inv0 = 1 / a[0]
        out = [inv0] + [_ZERO] * T
        for n in range(1, T + 1):
            acc = _ZERO
            for j in range(1, min(n, len(a) - 1) + 1):
                if a[j]:
                    acc += a[j] * out[n - j]
            out[n] = -inv0 * acc
        return TruncSeries(out)

    def exp_zero_const(self) -> "TruncSeries":
        """exp of a series with zero constant term.

        Uses the derivative recurrence e_n = (1/n) sum_j j a_j e_{n-j}.
        """
        a = self._coeffs
        if a[0] != 0:
            raise ValueError(
                "exp requires constant term 0, got %s" % format_rational(a[0])
            )
        T = self.order
        out = [_ONE] + [_ZERO] * T
        for n in range(1, T + 1):
            acc = _ZERO
            for j in range(1, n + 1):
                if a[j]:
                    acc += j * a[j] * out[n - j]
            out[n] = acc / n
        return TruncSeries(out)

    def derivative(self) -> "TruncSeries":
        """Termwise derivative; the order drops by one."""
        if self.order == 0:
            raise ValueError("cannot differentiate a series of order 0")
        return TruncSeries(
            [n * self._coeffs[n] for n in range(1, self.order + 1)]
        )

    def scale_arg(self, c) -> "TruncSeries":
        """Substitute z -> c*z for an exact rational c."""
        c = _as_fraction(c)
        out, p = [], _ONE
        for a in self._coeffs:
            out.append(a * p)
            p *= c
        return TruncSeries(out)

    def shift_down(self, k: int) -> "TruncSeries":
        """Divide by z^k; the k lowest coefficients must vanish."""
        for n in range(k):
            if self._coeffs[n] != 0:
                raise ValueError(
                    "coefficient of z^%d is %s, not divisible by z^%d"
                    % (n, format_rational(self._coeffs[n]), k)
                )
        if self.order < k:
            raise ValueError("series order too small to shift down by %d" % k)
        return TruncSeries(self._coeffs[k:])


def zero(order: int) -> TruncSeries:
    return TruncSeries([_ZERO] * (order + 1))


def one(order: int) -> TruncSeries:
    return TruncSeries([_ONE] + [_ZERO] * order)


def monomial(n: int, order: int, c=_ONE) -> TruncSeries:
    """The series c*z^n at the given truncation order."""
    if n > order:
        raise ValueError("monomial degree exceeds truncation order")
    coeffs = [_ZERO] * (order + 1)
    coeffs[n] = _as_fraction(c)
    return TruncSeries(coeffs)


def s_series(order: int) -> TruncSeries:
    """S(z) = sinh(z/2)/(z/2), an even series with S(0) = 1."""
    coeffs = [_ZERO] * (order + 1)
    for m in range(order // 2 + 1):
        coeffs[2 * m] = Fraction(1, 4**m * math.factorial(2 * m + 1))
    return TruncSeries(coeffs)


def s_prime_series(order: int) -> TruncSeries:
    """The derivative S'(z), an odd series."""
    coeffs = [_ZERO] * (order + 1)
    for m in range(1, (order + 1) // 2 + 1):
        coeffs[2 * m - 1] = Fraction(2 * m, 4**m * math.factorial(2 * m + 1))
    return TruncSeries(coeffs)


def cosh_half_series(order: int) -> TruncSeries:
    """cosh(z/2) as an even series."""
    coeffs = [_ZERO] * (order + 1)
    for m in range(order // 2 + 1):
        coeffs[2 * m] = Fraction(1, 4**m * math.factorial(2 * m))
    return TruncSeries(coeffs)


def b_sequence(gmax: int) -> list:
    """[b_1, ..., b_gmax] with b_g = [z^(2g)] 1/S(z).

    >>> b_sequence(1)
    [Fraction(-1, 24)]
    """
    inv = s_series(2 * gmax).inverse()
    return [inv.coeff(2 * g) for g in range(1, gmax + 1)]


def tilde_b_sequence(gmax: int) -> list:
    """The spin-weighted variant -2^(g-1)/(2^(2g-1)-1) * b_g."""
    bs = b_sequence(gmax)
    return [
        Fraction(-(2 ** (g - 1)), 2 ** (2 * g - 1) - 1) * bs[g - 1]
        for g in range(1, gmax + 1)
    ]


@dataclass(frozen=True)
class SeriesIdentityReport:
    """Outcome of the convolution identity checks."""

    order: int
    k_max: int
    cases: int
    failures: tuple

    @property
    def passed(self) -> bool:
        return not self.failures


def _pair_convolution(k: int, parity_step: int, order: int) -> TruncSeries:
    """sum over j of (j(k-j)/2) S(jz) S((k-j)z), j ranging with the given step.

    parity_step 1 sums over 0 < j < k; parity_step 2 over odd j only.
    """
    s = s_series(order)
    acc = zero(order)
    for j in range(1, k, parity_step):
        acc = acc + Fraction(j * (k - j), 2) * s.scale_arg(j) * s.scale_arg(k - j)
    return acc


def verify_sinh_identities(k_max: int, order: int) -> SeriesIdentityReport:
    """Check the two closed forms for products-of-S convolutions.

    For every 1 <= k <= k_max, coefficientwise up to the given order:

        sum_{0<j<k} (j(k-j)/2) S(jz) S((k-j)z)
            = (1/z^2) (k cosh(kz/2) - k S(kz) cosh(z/2) / S(z))

    and for every even 2 <= m <= k_max:

        sum_{j odd, 0<j<m} (j(m-j)/2) S(jz) S((m-j)z)
            = (1/z^2) ((m/2) cosh(mz/2) - (m/2) S(mz) / S(2z))

    The right hand sides are expanded two orders further so the division by
    z^2 is exact; the z^0 and z^1 bracket coefficients are required to vanish.
    """
    T2 = order + 2
    s = s_series(T2)
    ch = cosh_half_series(T2)
    inv_s = s.inverse()
    failures = []
    cases = 0
    for k in range(1, k_max + 1):
        lhs = _pair_convolution(k, 1, order)
        bracket = k * ch.scale_arg(k) - k * s.scale_arg(k) * ch * inv_s
        rhs = bracket.shift_down(2)
        cases += 1
        if lhs.coeffs != rhs.coeffs[: order + 1]:
            failures.append(("pair", k))
    inv_s2 = s.scale_arg(2).inverse()
    for m in range(2, k_max + 1, 2):
        lhs = _pair_convolution(m, 2, order)
        bracket = Fraction(m, 2) * ch.scale_arg(m) - Fraction(m, 2) * s.scale_arg(
            m
        ) * inv_s2
        rhs = bracket.shift_down(2)
        cases += 1
        if lhs.coeffs != rhs.coeffs[: order + 1]:
            failures.append(("odd-pair", m))
    return SeriesIdentityReport(
        order=order, k_max=k_max, cases=cases, failures=tuple(failures)
    )
