from math import floor

import pytest
from hypothesis import given, strategies as st
from sympy import primerange

from fqreduce.bounds import (QUADRATIC_FACTOR, divides_check, e8_bound,
                             is_fundamental_discriminant, lie_bound,
                             minkowski_bound, minkowski_exponent,
                             quadratic_field_bound, sum_characterization)
from fqreduce.lie import builtin_type, group_order
from fqreduce.valuation import Factorization, v_ell


def minkowski_direct(n, ell):
    total, k = 0, 0
    while ell ** k * (ell - 1) <= n:
        total += floor(n / (ell ** k * (ell - 1)))
        k += 1
    return total


@pytest.mark.parametrize("n,ell,m", [(2, 3, 1), (4, 2, 7), (2, 5, 0), (1, 2, 1)])
def test_minkowski_exponent_examples(n, ell, m):
    assert minkowski_exponent(n, ell) == m


@given(st.integers(1, 200), st.sampled_from(list(primerange(2, 50))))
def test_minkowski_exponent_formula(n, ell):
    assert minkowski_exponent(n, ell) == minkowski_direct(n, ell)


def test_minkowski_bound_examples():
    assert minkowski_bound(1).value == 2
    assert minkowski_bound(2).value == 24
    assert minkowski_bound(4) == Factorization({2: 7, 3: 2, 5: 1})


def test_sum_characterization():
    assert sum_characterization(6, 3) == 4 == minkowski_exponent(6, 3)
    assert sum_characterization(2, 3) == 1
    assert sum_characterization(3, 5) == 0
    with pytest.raises(ValueError):
        sum_characterization(4, 2)


@given(st.integers(1, 120), st.sampled_from(list(primerange(3, 40))))
def test_sum_characterization_matches(n, ell):
    assert sum_characterization(n, ell) == minkowski_exponent(n, ell)


def test_e8_total_and_row():
    rep = lie_bound(builtin_type("E8"), 10 ** 4)
    assert rep.total == Factorization({2: 30, 3: 13, 5: 5, 7: 4, 11: 2, 13: 2,
                                       19: 1, 31: 1})
    assert rep.rows[3].valuations == (1, 1, 2, 1, 3, 1, 2, 2)
    assert rep.rows[3].exponent == 13
    assert e8_bound() == rep.total


def test_row_witness_achieves_minimum():
    t = builtin_type("F4")
    rep = lie_bound(t, 500)
    for ell, row in rep.rows.items():
        assert v_ell(ell, group_order(t, row.witness)) == row.exponent
        for p in primerange(2, 500):
            if p != ell:
                assert v_ell(ell, group_order(t, p)) >= row.exponent


def test_gl3_bound_at_three():
    rep = lie_bound(builtin_type("GL", 3), 1000)
    assert rep.rows[3].exponent == 1 == minkowski_exponent(3, 3)
    assert rep.rows[2].upper_bound_only
    assert not rep.rows[3].upper_bound_only


def test_ceiling_too_small():
    with pytest.raises(ValueError):
        lie_bound(builtin_type("E8"), 50)


def test_quadratic_bounds():
    m = e8_bound()
    assert quadratic_field_bound(5) == Factorization({5: 5}) * m
    assert quadratic_field_bound(-4) == m
    assert quadratic_field_bound(13) == Factorization({13: 2}) * m
    for d in QUADRATIC_FACTOR:
        assert is_fundamental_discriminant(d)
    with pytest.raises(ValueError):
        quadratic_field_bound(9)
    with pytest.raises(ValueError):
        quadratic_field_bound(1)


@pytest.mark.parametrize("d,ok", [(-4, True), (-3, True), (12, True), (8, True),
                                  (5, True), (-8, True), (4, False), (18, False),
                                  (-1, False), (0, False), (28, True), (20, False)])
def test_fundamental_discriminants(d, ok):
    assert is_fundamental_discriminant(d) is ok


def test_divides_check():
    assert divides_check(Factorization.of(24), Factorization.of(24)).ok
    res = divides_check(Factorization.of(16), Factorization.of(24))
    assert not res.ok and res.offending == [2]
    assert divides_check(Factorization.of(120), minkowski_bound(4)).ok


def test_report_record_shape():
    rec = lie_bound(builtin_type("G2"), 200).to_record()
    assert rec["target"] == "G2"
    for row in rec["rows"]:
        assert set(row) >= {"prime", "exponent", "witness", "valuations"}
    assert Factorization(rec["total"]).value == int(rec["value"])


@pytest.mark.parametrize("label", ["E8", "E7", "F4", "G2"])
def test_bound_stable_when_window_grows(label):
    t = builtin_type(label)
    totals = {c: lie_bound(t, c).total for c in (1000, 10 ** 4, 3 * 10 ** 4)}
    assert len(set(map(str, totals.values()))) == 1
