from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fqreduce.smith import linalg as la


def matrices(p, max_rows=4, max_cols=4):
    return st.tuples(st.integers(0, max_rows), st.integers(0, max_cols)).flatmap(
        lambda rc: st.lists(st.integers(0, p - 1), min_size=rc[0] * rc[1],
                            max_size=rc[0] * rc[1]).map(
            lambda xs: np.array(xs, dtype=np.int64).reshape(rc)))


def image_size(m, p):
    """|image| by enumerating every input vector."""
    cols = m.shape[1]
    seen = {tuple((m @ np.array(v, dtype=np.int64)) % p)
            for v in product(range(p), repeat=cols)}
    return len(seen)


@pytest.mark.parametrize("p", [2, 3, 5])
@given(data=st.data())
def test_rank_by_counting(p, data):
    m = data.draw(matrices(p))
    r = la.rank(m, p)
    assert p ** r == image_size(m, p)
    ns = la.nullspace(m, p)
    assert ns.shape[1] == m.shape[1] - r
    assert la.is_zero(m @ ns, p)
    assert la.rank(ns, p) == ns.shape[1]
    cs = la.colspace(m, p)
    assert cs.shape[1] == r and la.span_contains(cs, m, p)


@pytest.mark.parametrize("p", [2, 3, 7])
@given(data=st.data())
def test_solve(p, data):
    m = data.draw(matrices(p, 4, 4))
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=m.shape[1],
                                    max_size=m.shape[1])), dtype=np.int64)
    b = (m @ x) % p
    y = la.solve(m, b, p)
    assert y is not None and np.array_equal((m @ y) % p, b)


def test_solve_inconsistent():
    assert la.solve(np.array([[1, 0], [1, 0]]), np.array([0, 1]), 2) is None


@pytest.mark.parametrize("p", [2, 3, 5])
def test_random_invertible_and_inverse(p):
    rng = np.random.default_rng(1)
    for n in range(1, 6):
        m = la.random_invertible(n, p, rng)
        assert np.array_equal((m @ la.inverse(m, p)) % p, la.eye(n))
    with pytest.raises(ValueError):
        la.inverse(np.zeros((2, 2), dtype=np.int64), 3)


def test_rref_is_deterministic_and_reduced():
    m = np.array([[0, 2, 4], [1, 1, 1], [2, 0, 3]])
    r1, piv = la.rref(m, 5)
    r2, _ = la.rref(m, 5)
    assert np.array_equal(r1, r2)
    for i, c in enumerate(piv):
        col = r1[:, c]
        assert col[i] == 1 and np.count_nonzero(col) == 1


def test_subquotient():
    p, d = 3, 4
    num = la.eye(d)[:, :3]
    den = la.eye(d)[:, :1]
    sq = la.Subquotient(num, den, p, d)
    assert sq.dim == 2
    v = np.array([2, 1, 0, 0])
    assert np.array_equal(sq.coords(v).ravel(), [1, 0])
    assert np.array_equal(sq.coords(sq.lift([1, 2])).ravel(), [1, 2])
    with pytest.raises(ValueError):
        sq.coords(np.array([0, 0, 0, 1]))
    with pytest.raises(ValueError):
        la.Subquotient(den, num, p, d)


def test_induced_map_checks_well_definedness():
    p, d = 2, 2
    sq = la.Subquotient(la.eye(d), la.eye(d)[:, :1], p, d)
    swap = np.array([[0, 1], [1, 0]])
    with pytest.raises(ValueError, match="denominator"):
        la.induced_map(swap, sq, sq)
    assert la.induced_map(la.eye(d), sq, sq).tolist() == [[1]]


def test_zero_dimensional():
    sq = la.Subquotient(la.zeros(0, 0), la.zeros(0, 0), 5, 0)
    assert sq.dim == 0
    assert la.rank(la.zeros(0, 3), 5) == 0
    assert la.nullspace(la.zeros(0, 3), 5).shape == (3, 3)
