"""Group-action reconstruction of the twisted class."""

from fractions import Fraction

import pytest

from elsvkit.chiodo import admissible, chiodo_class, integrate_class
from elsvkit.errors import ParameterError
from elsvkit.givental import (
    adjoint_index,
    basis_change_check,
    flat_unit_check,
    givental_action,
    symplectic_check,
    symplectic_defect,
    tft_amplitude,
)


def test_symplectic_condition_holds():
    for r in (1, 2, 3, 4):
        assert symplectic_check(r, 8)


def test_symplectic_defect_vanishes_identically():
    for r in (2, 3):
        for series in symplectic_defect(r, 6):
            assert all(c == 0 for c in series.c)


def test_adjoint_index():
    assert [adjoint_index(3, a) for a in (1, 2, 3)] == [2, 1, 3]
    assert adjoint_index(1, 1) == 1


def test_tft_amplitudes():
    # genus scaling r^(2g-1) behind the mod-r gate
    assert tft_amplitude(0, (1, 1, 1), 2, 1) == Fraction(1, 2)
    assert tft_amplitude(1, (1,), 2, 1) == 2
    assert tft_amplitude(0, (1, 1, 2), 2, 1) == 0
    assert tft_amplitude(2, (2,), 1, 1) == 1


def test_flat_unit_and_basis_change():
    for r in (1, 2, 3):
        for s in range(1, r + 1):
            assert flat_unit_check(r, s)
        assert basis_change_check(r)


def test_action_rejects_bad_twists():
    with pytest.raises(ParameterError):
        givental_action(1, 1, 2, 1, (3,))


def _monomials(n, dim):
    if n == 1:
        return [(d,) for d in range(dim + 1)]
    out = []
    for d in range(dim + 1):
        for rest in _monomials(n - 1, dim - d):
            out.append((d,) + rest)
    return out


@pytest.mark.parametrize("g,n", [(0, 3), (1, 1), (1, 2)])
def test_action_matches_class_r2(g, n):
    """Spot-check of the full consistency campaign at r = 2."""
    r = 2
    dim = 3 * g - 3 + n
    for s in range(r + 1):
        for a1 in range(1, r + 1):
            for rest in [(a1,) * (n - 1)] if n > 1 else [()]:
                a = (a1,) + rest
                if not admissible(g, n, r, s, a):
                    continue
                left = chiodo_class(g, n, r, s, a)
                right = givental_action(g, n, r, s, a)
                for mono in _monomials(n, dim):
                    assert integrate_class(left, mono) == integrate_class(
                        right, mono), (g, n, s, a, mono)


def test_action_at_r1_is_hodge():
    # r = 1 reduces to the untwisted class
    left = chiodo_class(1, 1, 1, 1, (1,))
    right = givental_action(1, 1, 1, 1, (1,))
    for mono in [(0,), (1,)]:
        assert integrate_class(left, mono) == integrate_class(right, mono)
