"""Spectral curves, correlator recursion, and series-level checks."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp

from elsvkit.errors import ParameterError, ResourceLimitError
from elsvkit.exactnum import to_mpf, working_precision
from elsvkit.spectral_tr import (
    _from_gc,
    _from_gf,
    _gmp_ctx,
    _to_gc,
    _to_gf,
    bernoulli_diagonal,
    branch_exponent,
    branch_points,
    closed_form_N,
    curve_lambert,
    curve_monotone,
    curve_srs,
    deck_transform,
    doss_test,
    extract_coefficients,
    flat_r_inverse_from_B,
    local_involution,
    omega,
    r_matrix_from_B,
    xi_function_check,
)


def test_curve_constructors():
    c = curve_lambert()
    assert c.kind == "srs" and c.r == 1 and c.s == 1
    assert len(branch_points(c)) == 1
    assert len(branch_points(curve_srs(3, 2))) == 3
    assert curve_monotone().kind == "monotone"


def test_deck_transform_is_an_involution_near_branch():
    c = curve_lambert()
    p = branch_points(c)[0]
    with working_precision(256):
        z = p + mp.mpf("0.01")
        w = deck_transform(c, p, z)
        assert abs(deck_transform(c, p, w) - z) < mp.mpf(10) ** -60
        assert abs(w - z) > mp.mpf("0.001")  # the other sheet


def test_local_involution_series():
    with working_precision(256):
        sig = local_involution(curve_lambert(), 0, 5)
        tol = mp.mpf(10) ** -50
        assert abs(sig.c[0]) < tol
        assert abs(sig.c[1] + 1) < tol
        assert abs(sig.c[2] - mp.mpf(2) / 3) < tol
        assert abs(sig.c[3] + mp.mpf(4) / 9) < tol


def test_local_involution_self_inverse():
    with working_precision(256):
        for curve, i in [(curve_lambert(), 0), (curve_srs(2, 1), 1),
                         (curve_monotone(), 0)]:
            sig = local_involution(curve, i, 6)
            back = sig.compose(sig)
            tol = mp.mpf(10) ** -45
            assert abs(back.c[1] - 1) < tol
            assert all(abs(c) < tol for k, c in enumerate(back.c) if k != 1)


def test_r_matrix_shape_and_unit():
    R = r_matrix_from_B(curve_srs(2, 1), 3)
    assert len(R) == 2 and all(len(row) == 2 for row in R)
    tol = mp.mpf(10) ** -50
    assert abs(R[0][0].c[0] - 1) < tol
    assert abs(R[0][1].c[0]) < tol


def test_flat_diagonal_matches_bernoulli():
    with working_precision(256):
        tol = mp.mpf(10) ** -30
        for r in (1, 2):
            flat = flat_r_inverse_from_B(curve_srs(r, 1), 4)
            closed = bernoulli_diagonal(r, 4)
            for fs, cs in zip(flat, closed):
                for fc, cc in zip(fs.c, cs.c):
                    assert abs(mp.mpc(fc) - to_mpf(cc)) < tol


def test_flat_diagonal_needs_srs():
    with pytest.raises(ParameterError):
        flat_r_inverse_from_B(curve_monotone(), 3)


def test_transpose_identity_and_control():
    assert doss_test(curve_srs(2, 1), 3)
    assert doss_test(curve_srs(2, 2), 3)
    # perturbing y at s = r must break it
    assert not doss_test(curve_srs(2, 2, perturb_y=True), 3)


def test_xi_checks():
    assert xi_function_check(2, 1, 1, 4)
    assert xi_function_check(3, 3, 2, 3)
    with pytest.raises(ParameterError):
        xi_function_check(2, 1, 3, 4)


def test_branch_exponent():
    assert branch_exponent(1, 1, (2,), 1, 1) == 3
    assert branch_exponent(1, 1, (3,), 2, 1) == 2
    assert branch_exponent(1, 1, (2,), 2, 1) is None
    assert branch_exponent(0, 3, (1, 1, 1), 1, 1) == 4


def test_closed_form_pins():
    assert closed_form_N(1, (2,), 1, 1) == Fraction(1, 2)
    assert closed_form_N(1, (2,), 2, 2) == Fraction(1, 2)
    assert closed_form_N(1, (3,), 2, 1) == Fraction(5, 2)
    assert closed_form_N(1, (2,), 2, 1) == 0  # no integral branch exponent
    with pytest.raises(ParameterError):
        closed_form_N(1, (2,), 2, 0)


def test_recursion_domain_checks():
    with pytest.raises(ParameterError):
        extract_coefficients(curve_lambert(), 0, 2, 2)
    with pytest.raises(ResourceLimitError):
        extract_coefficients(curve_lambert(), 0, 4, 1)


def test_omega_symmetric():
    c = curve_lambert()
    with working_precision(192):
        pts = (mp.mpf("0.31"), mp.mpf("0.37"), mp.mpf("0.45"))
        w1 = omega(c, 0, 3, pts, precision=192)
        w2 = omega(c, 0, 3, (pts[2], pts[0], pts[1]), precision=192)
        assert abs(w1 - w2) < mp.mpf(10) ** -40 * (1 + abs(w1))


def test_extraction_pins_lambert():
    table = extract_coefficients(curve_lambert(), 1, 1, 2)
    with working_precision(256):
        assert abs(table[(1,)]) < mp.mpf(10) ** -30
        assert abs(table[(2,)] - to_mpf(Fraction(1, 2))) < mp.mpf(10) ** -20


def test_extraction_pins_monotone():
    table = extract_coefficients(curve_monotone(), 1, 1, 3)
    with working_precision(256):
        for mu, want in [((2,), Fraction(1, 2)), ((3,), Fraction(10, 3))]:
            ref = to_mpf(want)
            assert abs(table[mu] - ref) <= mp.mpf(10) ** -20 * (1 + abs(ref)), mu


def test_extraction_is_deterministic():
    a = extract_coefficients(curve_srs(2, 2), 1, 1, 2)
    b = extract_coefficients(curve_srs(2, 2), 1, 1, 2)
    assert a == b


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@given(finite, finite)
def test_gmp_round_trip_exact(re, im):
    with working_precision(256), _gmp_ctx():
        x = mp.mpf(re)
        assert _from_gf(_to_gf(x)) == x
        z = mp.mpc(re, im)
        assert _from_gc(_to_gc(z)) == z


def test_gmp_round_trip_high_precision_values():
    with working_precision(256), _gmp_ctx():
        for x in (mp.mpf(1) / 3, mp.sqrt(2), -mp.pi, mp.mpf(0),
                  mp.ldexp(1, -1000), -mp.ldexp(3, 900)):
            assert _from_gf(_to_gf(x)) == x
