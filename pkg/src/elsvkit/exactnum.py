"""Exact arithmetic kernel: rationals, Bernoulli data, truncated power series.

Conventions used throughout the package:

* ``Rat`` is ``fractions.Fraction``; exact routines return it.
* A series is truncated at a fixed order M and stored as the coefficient
  list ``c[0..M]``; everything past M is dropped silently.
* Bernoulli polynomials follow ``t e^{xt}/(e^t - 1) = sum_l B_l(x) t^l/l!``,
  so ``B_1(0) = -1/2`` and ``B_1(1) = +1/2``.
* Arbitrary-precision floats and complexes are mpmath numbers; use
  ``working_precision`` to set the binary precision for a block of code.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from math import comb, factorial
from typing import List, Sequence

import mpmath

from .errors import SeriesError

Rat = Fraction

DEFAULT_PRECISION = 256


@contextmanager
def working_precision(bits: int = DEFAULT_PRECISION):
    """Run a block at the given mpmath binary precision."""
    with mpmath.workprec(bits):
        yield


def to_mpf(x) -> mpmath.mpf:
    """Exact Fraction (or int) to mpf at the current working precision."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def double_factorial(n: int) -> int:
    """n!! for n >= -1, extended by (-3)!! = -1.

    The extension is the unique value consistent with n!! = (n+2)!!/(n+2)
    and is what the formal Gaussian moment of order -1 uses.
    """
    if n == -3:
        return -1
    if n < -1:
        raise ValueError(f"double factorial undefined for n={n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


# Coefficients of t/(e^t - 1), i.e. B_j/j!, grown on demand.
_bern: List[Fraction] = [Fraction(1)]


def _bern_upto(m: int) -> List[Fraction]:
    while len(_bern) <= m:
        k = len(_bern)
        # next coefficient of the inverse of sum_j t^j/(j+1)!
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += _bern[k - j] / factorial(j + 1)
        _bern.append(-acc)
    return _bern


def bernoulli_number(l: int) -> Fraction:
    """B_l with B_1 = -1/2."""
    if l < 0:
        raise ValueError("negative Bernoulli index")
    return _bern_upto(l)[l] * factorial(l)


def bernoulli_polynomial(l: int, x) -> Fraction:
    """B_l(x) = sum_j C(l,j) B_j x^{l-j}; exact when x is Fraction or int."""
    if l < 0:
        raise ValueError("negative Bernoulli index")
    _bern_upto(l)
    x = Fraction(x)
    acc = Fraction(0)
    for j in range(l + 1):
        acc += comb(l, j) * bernoulli_number(j) * x ** (l - j)
    return acc


class TruncSeries:
    """Power series c[0] + c[1] t + ... + c[M] t^M with everything above M dropped.

    Coefficients may be Fractions or mpmath numbers; operations only assume
    field arithmetic. Binary operations truncate to the smaller order.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence, order: int | None = None):
        cs = [Fraction(a) if isinstance(a, int) else a for a in coeffs]
        if not cs:
            cs = [Fraction(0)]
        if order is not None:
            if order < 0:
                raise SeriesError("series order must be nonnegative")
            if len(cs) > order + 1:
                cs = cs[: order + 1]
            else:
                zero = cs[0] * 0
                cs = cs + [zero] * (order + 1 - len(cs))
        self.c = cs

    @classmethod
    def constant(cls, value, order: int) -> "TruncSeries":
        s = cls([value], order)
        return s

    @classmethod
    def monomial(cls, value, k: int, order: int) -> "TruncSeries":
        if k > order:
            return cls([value * 0], order)
        zero = value * 0
        return cls([zero] * k + [value], order)

    @property
    def order(self) -> int:
        return len(self.c) - 1

    def coefficient(self, k: int):
        if k < 0 or k > self.order:
            raise IndexError(f"coefficient {k} outside truncation order {self.order}")
        return self.c[k]

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.c, order)

    def _zero(self):
        return self.c[0] * 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.c == other.c

    def __repr__(self) -> str:
        return f"TruncSeries({self.c!r})"

    def __add__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            cs = list(self.c)
            cs[0] = cs[0] + other
            return TruncSeries(cs)
        m = min(self.order, other.order)
        return TruncSeries([self.c[k] + other.c[k] for k in range(m + 1)])

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-a for a in self.c])

    def __sub__(self, other) -> "TruncSeries":
        return self + (-other)

    def __rsub__(self, other) -> "TruncSeries":
        return (-self) + other

    def __mul__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return TruncSeries([a * other for a in self.c])
        m = min(self.order, other.order)
        zero = self._zero()
        out = [zero] * (m + 1)
        for i, a in enumerate(self.c[: m + 1]):
            if a == 0:
                continue
            for j in range(m + 1 - i):
                b = other.c[j]
                if b == 0:
                    continue
                out[i + j] += a * b
        return TruncSeries(out)

    __rmul__ = __mul__

    def derivative(self) -> "TruncSeries":
        if self.order == 0:
            return TruncSeries([self._zero()])
        return TruncSeries([k * self.c[k] for k in range(1, self.order + 1)])

    def integral(self) -> "TruncSeries":
        """Antiderivative with constant term 0, one order higher."""
        out = [self._zero()]
        for k, a in enumerate(self.c):
            out.append(a / (k + 1))
        return TruncSeries(out)

    def inverse(self) -> "TruncSeries":
        if self.c[0] == 0:
            raise SeriesError("series inverse needs a nonzero constant term")
        m = self.order
        inv0 = 1 / self.c[0]
        out = [inv0]
        for k in range(1, m + 1):
            acc = self._zero()
            for j in range(1, k + 1):
                acc += self.c[j] * out[k - j]
            out.append(-inv0 * acc)
        return TruncSeries(out)

    def log(self) -> "TruncSeries":
        if self.c[0] != 1:
            raise SeriesError("series log needs constant term exactly 1")
        # log(f) = integral of f'/f
        q = self.derivative() * self.inverse().truncate(max(self.order - 1, 0))
        return q.integral().truncate(self.order)

    def exp(self) -> "TruncSeries":
        if self.c[0] != 0:
            raise SeriesError("series exp needs constant term exactly 0")
        m = self.order
        out = [self.c[0] * 0 + 1]
        for k in range(1, m + 1):
            acc = self._zero()
            for j in range(1, k + 1):
                acc += j * self.c[j] * out[k - j]
            out.append(acc / k)
        return TruncSeries(out)

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        if inner.c[0] != 0:
            raise SeriesError("series composition needs inner constant term 0")
        m = min(self.order, inner.order)
        inner = inner.truncate(m)
        acc = TruncSeries.constant(self.c[m], m)
        for k in range(m - 1, -1, -1):
            acc = acc * inner + self.c[k]
        return acc

    def sqrt(self) -> "TruncSeries":
        """Square root with constant term 1."""
        if self.c[0] != 1:
            raise SeriesError("series sqrt needs constant term exactly 1")
        half = Fraction(1, 2) if isinstance(self.c[0], Fraction) else self.c[0] / 2
        return (self.log() * half).exp()


def series_log(s: TruncSeries) -> TruncSeries:
    return s.log()


def series_exp(s: TruncSeries) -> TruncSeries:
    return s.exp()


def series_inverse(s: TruncSeries) -> TruncSeries:
    return s.inverse()


def series_compose(outer: TruncSeries, inner: TruncSeries) -> TruncSeries:
    return outer.compose(inner)


def series_reversion(f: TruncSeries) -> TruncSeries:
    """Compositional inverse g with f(g(t)) = t, for f = c1 t + ... , c1 != 0."""
    if f.c[0] != 0:
        raise SeriesError("series reversion needs constant term 0")
    if f.c[1] == 0:
        raise SeriesError("series reversion needs an invertible linear term")
    m = f.order
    zero = f._zero()
    ident = TruncSeries.monomial(zero + 1, 1, m)
    g = TruncSeries([zero, 1 / f.c[1]], m)
    fp = f.derivative().truncate(m)
    # Newton iteration; order of contact doubles each round.
    for _ in range(max(1, m.bit_length() + 1)):
        err = f.compose(g) - ident
        g = (g - err * fp.compose(g).inverse()).truncate(m)
    return g


def monotone_kappa_coefficients(count: int) -> List[Fraction]:
    """First ``count`` coefficients A_1..A_count of the odd-double-factorial log.

    Defined by exp(-sum_l A_l U^l) = sum_k (2k+1)!! U^k, so A_1 = -3,
    A_2 = -21/2, and A_1^2/2 - A_2 = 15.
    """
    if count < 0:
        raise ValueError("need a nonnegative coefficient count")
    odd = TruncSeries([Fraction(double_factorial(2 * k + 1)) for k in range(count + 1)])
    a = -odd.log()
    return a.c[1:]


def gaussian_moment(k: int, order: int | None = None) -> TruncSeries:
    """Formal Gaussian moment of w^{2k}: the series (2k-1)!! zeta^k.

    k = -1 is allowed and uses (-3)!! = -1, giving -zeta^{-1} truncated
    into the zeta^0 slot only when the caller shifts it; here k must be
    nonnegative, negative moments are handled by the caller.
    """
    if k < 0:
        raise ValueError("gaussian_moment defined for k >= 0; shift negative orders first")
    if order is None:
        order = k
    return TruncSeries.monomial(Fraction(double_factorial(2 * k - 1)), k, order)
