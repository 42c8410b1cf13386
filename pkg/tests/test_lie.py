from itertools import product

import numpy as np
import pytest

from fqreduce.lie import (LieTypeData, builtin_type, degree_valuations,
                          group_order, order_valuation)
from fqreduce.valuation import v_ell


def count_invertible(n, p):
    count = 0
    for entries in product(range(p), repeat=n * n):
        m = np.array(entries).reshape(n, n)
        if round(np.linalg.det(m)) % p:
            count += 1
    return count


def test_builtin_e8():
    t = builtin_type("E8")
    assert t.N == 120
    assert t.degrees == (2, 8, 12, 14, 18, 20, 24, 30)


@pytest.mark.parametrize("label", ["GL(3)", "gl3", "GL"])
def test_builtin_gl_spellings(label):
    t = builtin_type(label, 3) if label == "GL" else builtin_type(label)
    assert (t.N, t.degrees) == (3, (1, 2, 3))


def test_builtin_small_cases():
    assert builtin_type("GL", 1).N == 0
    assert builtin_type("G2").N == 6
    with pytest.raises(ValueError):
        builtin_type("B7")
    with pytest.raises(ValueError):
        builtin_type("GL")


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2)])
def test_gl_order_brute(n, p):
    assert group_order(builtin_type("GL", n), p) == count_invertible(n, p)


def test_group_order_examples():
    assert group_order(builtin_type("GL", 2), 3) == 48
    assert group_order(builtin_type("GL", 1), 5) == 4
    assert group_order(builtin_type("GL", 3), 2) == 168
    assert group_order(builtin_type("G2"), 2) == 12096
    with pytest.raises(ValueError):
        group_order(builtin_type("G2"), 6)


def test_descriptor_invariant():
    with pytest.raises(ValueError, match="N=5"):
        LieTypeData("G2bad", 5, (2, 6))
    t = LieTypeData.from_record({"label": "G2", "N": 6, "degrees": [2, 6]})
    assert LieTypeData.from_record(t.to_record()) == t
    with pytest.raises(ValueError, match="N"):
        LieTypeData.from_record({"label": "x", "degrees": [2]})


def test_e8_worked_example():
    vals = degree_valuations(builtin_type("E8"), 11, 3)
    assert vals == [1, 1, 2, 1, 3, 1, 2, 2]
    assert order_valuation(builtin_type("E8"), 11, 3) == 13


@pytest.mark.parametrize("label,p,ell", [("E8", 2, 3), ("E7", 5, 2), ("F4", 7, 13),
                                         ("GL(5)", 3, 11), ("E6", 13, 7)])
def test_order_valuation_against_big_integer(label, p, ell):
    t = builtin_type(label)
    assert order_valuation(t, p, ell) == v_ell(ell, group_order(t, p))


def test_order_valuation_errors_and_trivia():
    assert order_valuation(builtin_type("GL", 2), 5, 7) == 0
    assert order_valuation(builtin_type("GL", 1), 13, 3) == v_ell(3, 12)
    with pytest.raises(ValueError):
        order_valuation(builtin_type("E8"), 3, 3)
