"""Twisted-class expressions on stable graphs and their integrals."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from elsvkit.chiodo import (
    admissible,
    chern_character,
    chiodo_class,
    chiodo_integral_elsv,
    class_tail_integral,
    integrate_class,
    integrate_with_tails,
    validate_params,
)
from elsvkit.errors import ParameterError, StabilityError


def test_validate_params_bounds():
    validate_params(1, 3, 2, (1,))
    with pytest.raises(ParameterError):
        validate_params(1, 2, 3, (1,))  # s > r
    with pytest.raises(ParameterError):
        validate_params(1, 2, 1, (3,))  # a out of 1..r
    with pytest.raises(ParameterError):
        validate_params(2, 2, 1, (1,))  # twist count != n


def test_admissibility_gate():
    assert admissible(0, 3, 2, 1, (1, 1, 1))
    assert not admissible(0, 3, 2, 1, (1, 1, 2))
    # non-admissible data integrates to zero
    assert integrate_class(chiodo_class(0, 3, 2, 1, (1, 1, 2)), (0, 0, 0)) == 0


def test_degree_zero_is_one_over_r():
    for r in (1, 2, 3):
        for s in range(r + 1):
            for a1 in range(1, r + 1):
                for a2 in range(1, r + 1):
                    a3 = ((2 * 0 - 2 + 3) * s - a1 - a2) % r
                    a3 = a3 if a3 else r
                    if not admissible(0, 3, r, s, (a1, a2, a3)):
                        continue
                    val = integrate_class(chiodo_class(0, 3, r, s, (a1, a2, a3)),
                                          (0, 0, 0))
                    assert val == Fraction(1, r), (r, s, a1, a2, a3)


def test_genus_one_degree_one_pin():
    assert integrate_class(chiodo_class(1, 1, 1, 1, (1,)), (0,)) == Fraction(-1, 24)


def test_genus_two_pins():
    want = [Fraction(1, 1152), Fraction(-1, 480), Fraction(7, 5760),
            Fraction(0), Fraction(0)]
    expr = chiodo_class(2, 1, 1, 1, (1,))
    got = [integrate_class(expr, (4 - d,)) for d in range(5)]
    assert got == want


def test_max_degree_truncation_consistency():
    full = chiodo_class(2, 1, 1, 1, (1,))
    cut = chiodo_class(2, 1, 1, 1, (1,), max_degree=2)
    for d in (2, 3, 4):
        assert integrate_class(cut, (4 - d,)) == (
            integrate_class(full, (4 - d,)) if d <= 2 else 0)


def test_chern_character_genus_one():
    # at r = s = 1 the first character term is the Hodge class
    assert integrate_class(chern_character(1, 1, 1, 1, (1,), 1), (0,)) == Fraction(1, 24)
    with pytest.raises(ParameterError):
        chern_character(1, 1, 1, 1, (1,), 0)


def test_integral_with_tails_matches_streaming():
    # one geometric tail parameter per point
    tails = [Fraction(1, 2), Fraction(-2, 3), Fraction(3)]
    for (g, n, r, s, a) in [(1, 2, 2, 1, (1, 1)), (1, 2, 2, 2, (2, 2)),
                            (0, 3, 2, 1, (1, 1, 1))]:
        ts = tails[:n]
        expr = chiodo_class(g, n, r, s, a)
        assert integrate_with_tails(expr, ts) == class_tail_integral(g, n, r, s, a, ts)


def test_elsv_integral_is_a_tail_integral():
    assert chiodo_integral_elsv(1, 2, 1, (3,)) == class_tail_integral(
        1, 1, 2, 1, (1,), [Fraction(3, 2)])


def test_elsv_integrals():
    # the r = s = 1 specialization against the frozen genus-1 row
    assert chiodo_integral_elsv(1, 1, 1, (2,)) == Fraction(1, 24)
    assert Fraction(2 ** 2, 2) * chiodo_integral_elsv(1, 1, 1, (2,)) == Fraction(1, 12)
    assert chiodo_integral_elsv(1, 2, 2, (2,)) == Fraction(1, 16)
    assert chiodo_integral_elsv(1, 2, 2, (1, 1)) == Fraction(1, 48)


def test_unstable_shapes_rejected():
    with pytest.raises(StabilityError):
        chiodo_class(0, 2, 1, 1, (1, 1))


@given(st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=3))
def test_admissible_iff_nonzero_in_degree_zero(r, s):
    if s > r:
        return
    for a1 in range(1, r + 1):
        a = (a1, 1, 1)
        val = integrate_class(chiodo_class(0, 3, r, s, a), (0, 0, 0))
        assert (val != 0) == admissible(0, 3, r, s, a)
