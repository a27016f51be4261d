"""Acceptance runs: the full verification campaigns at their stated
ranges, tolerances, and time budgets. One printed pass/fail line per
criterion."""

import time
from fractions import Fraction

from elsvkit.campaigns import (
    check_doss,
    check_elsv,
    check_givental_consistency,
    check_jpt,
    check_monotone_elsv,
    check_mumford,
    check_structural,
    check_tr_equivalence,
    monotone_lhs,
    monotone_rhs,
)


def _finish(name, rep, t0, budget):
    took = time.monotonic() - t0
    ok = rep.ok and took < budget
    word = "PASS" if ok else "FAIL"
    print(f"{word} {name}: {rep.passed}/{len(rep.rows)} rows, "
          f"{took:.1f}s (budget {budget}s)")
    assert rep.ok, [row.csv() for row in rep.rows if not row.ok][:5]
    assert took < budget, f"{name} exceeded budget: {took:.1f}s"
    return rep


def _row(rep, **want):
    for row in rep.rows:
        if all(getattr(row, k) == v for k, v in want.items()):
            return row
    raise AssertionError(f"no row matching {want}")


def test_criterion_1_elsv_counts_vs_integrals():
    t0 = time.monotonic()
    rep = check_elsv()  # g <= 2, |mu| <= 5, exact
    _finish("criterion 1 (elsv)", rep, t0, 120)
    pin = _row(rep, g="1", mu="2")
    assert pin.lhs == pin.rhs == "1/12"
    assert len(rep.rows) == 43


def test_criterion_2_monotone_counts_vs_integrals():
    t0 = time.monotonic()
    rep = check_monotone_elsv()  # g <= 1, |mu| <= 4, exact
    _finish("criterion 2 (monotone-elsv)", rep, t0, 120)
    # the pinned identity behind the mu = (2) row
    assert monotone_lhs(1, (2,)) == Fraction(1, 2)
    assert monotone_rhs(1, (2,)) == 6 * (Fraction(-3, 24) + Fraction(5, 24))
    assert len(rep.rows) == 14


def test_criterion_3_orbifold_counts_vs_closed_form():
    t0 = time.monotonic()
    rep = check_jpt()  # r in {2,3}, g <= 1, |mu| <= 4, r | |mu|, exact
    _finish("criterion 3 (jpt)", rep, t0, 300)
    pin = _row(rep, g="1", r="2", mu="2")
    assert pin.lhs == pin.rhs == "1/2"
    assert len(rep.rows) == 13


def test_criterion_4_genus_two_class_pins():
    t0 = time.monotonic()
    rep = check_mumford()  # exact degree-by-degree values
    _finish("criterion 4 (mumford)", rep, t0, 60)
    assert _row(rep, g="1").lhs == "-1/24"
    got = [row.lhs for row in rep.rows if row.g == "2"]
    assert got == ["1/1152", "-1/480", "7/5760", "0", "0"]


def test_criterion_5_action_reconstruction():
    t0 = time.monotonic()
    rep = check_givental_consistency()  # r <= 3, all admissible twists
    _finish("criterion 5 (givental-consistency)", rep, t0, 600)
    assert len(rep.rows) == 213


def test_criterion_6_series_checks_with_control():
    t0 = time.monotonic()
    rep = check_doss()
    _finish("criterion 6 (doss)", rep, t0, 300)
    controls = [row for row in rep.rows if row.s.endswith("*")]
    assert len(controls) == 2  # perturbed negatives, expected to fail the identity
    assert all(row.lhs == "false" for row in controls)


def test_criterion_7_recursion_vs_closed_forms():
    t0 = time.monotonic()
    rep = check_tr_equivalence()  # 256-bit, tolerance 1e-20
    _finish("criterion 7 (tr-equivalence)", rep, t0, 1200)
    assert len(rep.rows) == 44
    assert all(row.verdict == "tol:1e-20" for row in rep.rows)
    pin = _row(rep, r="mono", mu="3+3")
    assert pin.rhs == "4700/3"


def test_criterion_8_structural_consistency():
    t0 = time.monotonic()
    rep = check_structural()
    _finish("criterion 8 (structural)", rep, t0, 300)
    census = [row for row in rep.rows if row.s == "census"]
    assert [row.lhs for row in census] == ["2", "7"]
