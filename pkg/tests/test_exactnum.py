"""Exact scalars and truncated series."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp

from elsvkit.errors import SeriesError
from elsvkit.exactnum import (
    DEFAULT_PRECISION,
    TruncSeries,
    bernoulli_number,
    bernoulli_polynomial,
    double_factorial,
    gaussian_moment,
    monotone_kappa_coefficients,
    series_reversion,
    to_mpf,
    working_precision,
)

rationals = st.fractions(max_denominator=40)
small_series = st.lists(rationals, min_size=1, max_size=6).map(TruncSeries)


def test_working_precision_restores():
    before = mp.prec
    with working_precision(301):
        assert mp.prec == 301
    assert mp.prec == before


def test_to_mpf_is_division_at_ambient_precision():
    with working_precision(300):
        x = to_mpf(Fraction(1, 12))
        assert abs(x * 12 - 1) < mp.mpf(2) ** (-295)


def test_double_factorial_small():
    assert [double_factorial(k) for k in (-3, -1, 0, 1, 2, 7, 8)] == [
        -1, 1, 1, 1, 2, 105, 384]
    with pytest.raises(ValueError):
        double_factorial(-5)


@given(st.integers(min_value=1, max_value=12))
def test_double_factorial_recurrence(n):
    assert double_factorial(n) == n * double_factorial(n - 2)


def test_bernoulli_pins():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(12) == Fraction(-691, 2730)
    assert all(bernoulli_number(l) == 0 for l in (3, 5, 7, 9))


@given(st.integers(min_value=0, max_value=10), rationals)
def test_bernoulli_polynomial_reflection(l, x):
    assert bernoulli_polynomial(l, 1 - x) == (-1) ** l * bernoulli_polynomial(l, x)


def test_bernoulli_polynomial_at_endpoints():
    for l in range(8):
        assert bernoulli_polynomial(l, 0) == bernoulli_number(l)
    # B_l(1) differs from B_l only in the linear term
    assert bernoulli_polynomial(1, 1) == Fraction(1, 2)


@given(small_series, small_series, small_series)
def test_series_multiplication_associative(f, g, h):
    assert ((f * g) * h).c == (f * (g * h)).c


@given(small_series)
def test_series_exp_log_inverse(f):
    # force a unit constant term so log is defined
    g = TruncSeries([Fraction(1)] + f.c[1:])
    assert g.log().exp().c == g.c


@given(small_series)
def test_series_reciprocal(f):
    g = TruncSeries([Fraction(1)] + f.c[1:])
    one = (g * g.inverse()).c
    assert one[0] == 1 and all(c == 0 for c in one[1:])


def test_series_reversion_round_trip():
    f = TruncSeries([Fraction(0), Fraction(1), Fraction(2), Fraction(-1), Fraction(3)])
    g = series_reversion(f)
    t = f.compose(g).c
    assert t[1] == 1 and all(c == 0 for c in t[:1] + t[2:])
    with pytest.raises(SeriesError):
        series_reversion(TruncSeries([Fraction(1), Fraction(1)]))


def test_gaussian_moment_values():
    s = gaussian_moment(3)
    assert s.c[3] == 15 and all(c == 0 for i, c in enumerate(s.c) if i != 3)


def test_monotone_kappa_coefficients():
    assert monotone_kappa_coefficients(2) == [Fraction(-3), Fraction(-21, 2)]
    # defining identity: exp(-sum A_l U^l) has odd double factorials
    a = monotone_kappa_coefficients(5)
    s = (-TruncSeries([Fraction(0)] + a)).exp()
    assert s.c == [Fraction(double_factorial(2 * k + 1)) for k in range(6)]


def test_default_precision_is_256():
    assert DEFAULT_PRECISION == 256
