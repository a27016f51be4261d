"""Hurwitz counts: brute-force enumeration versus character sums."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from elsvkit.errors import ParameterError, ResourceLimitError
from elsvkit.hurwitz import (
    branch_count,
    count_connected,
    count_disconnected,
    hurwitz_connected,
    hurwitz_disconnected,
    hurwitz_number,
    kernel_in_use,
    labeled_factor,
    partitions,
)


def test_kernel_reports_identity():
    assert kernel_in_use() in ("compiled", "pure")


def test_partitions_enumeration():
    assert list(partitions(0)) == [()]
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_labeled_factor():
    assert labeled_factor((3,)) == 1
    assert labeled_factor((2, 1, 1)) == 2
    assert labeled_factor((1, 1, 1)) == 6


def test_branch_count():
    assert branch_count(1, (2,), "simple") == 3
    assert branch_count(1, (2,), "orbifold", 2) == 2
    assert branch_count(0, (1, 1, 1), "monotone") == 4
    with pytest.raises(ParameterError):
        branch_count(-1, (2,))
    with pytest.raises(ParameterError):
        branch_count(0, (2, 1), "orbifold", 2)


def test_flavor_validation():
    with pytest.raises(ParameterError):
        hurwitz_number(0, (2,), "simple", r=2)
    with pytest.raises(ParameterError):
        hurwitz_number(0, (2,), "weird")


def test_simple_pins():
    # d = 2: the only transposition squares to the identity
    assert hurwitz_number(1, (1, 1), "simple") == Fraction(1, 2)
    assert hurwitz_number(1, (2,), "simple") == Fraction(1, 2)
    assert hurwitz_number(0, (2, 1), "simple") == 4
    assert hurwitz_number(0, (3,), "simple") == 1
    # a single transposition has profile (2), never (1,1)
    assert hurwitz_connected((1, 1), 1, "simple") == 0


def test_monotone_pins():
    assert hurwitz_number(1, (2,), "monotone") == Fraction(1, 2)
    assert hurwitz_number(1, (3,), "monotone") == Fraction(10, 3)
    assert hurwitz_number(1, (4,), "monotone") == Fraction(35, 2)


def test_orbifold_pins():
    assert hurwitz_number(1, (2,), "orbifold", 2) == Fraction(1, 2)
    # degree not divisible by r: zero, not an error, when b is prescribed
    assert hurwitz_disconnected((3,), 2, "orbifold", 2) == 0


def test_genus_zero_double_counts():
    # six ordered pairs of distinct transpositions in S_3, each a 3-cycle
    assert count_connected((3,), 2, "simple") == 1


def test_monotone_below_simple():
    for mu in [(2,), (2, 1), (3,), (1, 1, 1)]:
        for b in range(0, 5):
            assert count_connected(mu, b, "monotone") <= count_connected(mu, b, "simple")


def test_connected_at_most_disconnected():
    for mu in [(2, 1), (2, 2), (3, 1)]:
        for b in range(0, 5):
            assert hurwitz_connected(mu, b) <= hurwitz_disconnected(mu, b)


@st.composite
def profile_and_length(draw):
    d = draw(st.integers(min_value=1, max_value=5))
    mu = draw(st.sampled_from(list(partitions(d))))
    b = draw(st.integers(min_value=0, max_value=6))
    flavor = draw(st.sampled_from(["simple", "monotone"]))
    return mu, b, flavor


@given(profile_and_length())
def test_brute_matches_characters(case):
    mu, b, flavor = case
    assert count_connected(mu, b, flavor) == hurwitz_connected(mu, b, flavor)
    assert count_disconnected(mu, b, flavor) == hurwitz_disconnected(mu, b, flavor)


@given(st.integers(min_value=1, max_value=2), st.integers(min_value=0, max_value=5))
def test_brute_matches_characters_orbifold(r, b):
    for mu in [(2,), (2, 1, 1), (2, 2), (4,)]:
        assert count_connected(mu, b, "orbifold", r) == hurwitz_connected(
            mu, b, "orbifold", r)


def test_brute_force_caps():
    with pytest.raises(ResourceLimitError):
        count_connected((9,), 1, "simple")
    with pytest.raises(ResourceLimitError):
        count_connected((2,), 11, "simple")


def test_hurwitz_number_methods_agree():
    for g, mu, flavor in [(0, (2, 1), "simple"), (1, (2,), "monotone"),
                          (1, (1, 1), "simple")]:
        assert hurwitz_number(g, mu, flavor) == hurwitz_number(
            g, mu, flavor, method="brute")
