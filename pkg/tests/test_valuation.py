import pytest
from hypothesis import given, strategies as st
from sympy import primerange

from fqreduce.valuation import (Factorization, NotAUnit, SearchExhausted,
                                UndefinedValuation, find_minkowski_prime,
                                is_minkowski_prime, mult_order, v_ell,
                                v_ell_pow_minus_one)

SMALL_PRIMES = list(primerange(2, 60))


def brute_order(a, m):
    x, e = a % m, 1
    while x != 1:
        x, e = x * a % m, e + 1
    return e


@pytest.mark.parametrize("ell,n,expected", [(3, 63, 2), (5, 1, 0), (2, -8, 3),
                                            (7, 7 ** 20 * 3, 20)])
def test_v_ell_examples(ell, n, expected):
    assert v_ell(ell, n) == expected


def test_v_ell_errors():
    with pytest.raises(UndefinedValuation):
        v_ell(3, 0)
    with pytest.raises(ValueError):
        v_ell(4, 12)


@given(st.sampled_from(SMALL_PRIMES), st.integers(1, 10 ** 9), st.integers(0, 12))
def test_v_ell_recovers_exponent(ell, m, e):
    m = m * ell if m % ell == 0 else m
    base = m
    while base % ell == 0:
        base //= ell
    assert v_ell(ell, base * ell ** e) == e


@pytest.mark.parametrize("ell,p,i,expected", [(3, 2, 2, 1), (3, 2, 6, 2),
                                              (3, 7, 1, 1), (3, 7, 3, 2)])
def test_pow_minus_one_examples(ell, p, i, expected):
    assert v_ell_pow_minus_one(ell, p, i) == expected


@given(st.sampled_from(SMALL_PRIMES), st.sampled_from(SMALL_PRIMES), st.integers(1, 60))
def test_pow_minus_one_matches_big_integers(ell, p, i):
    if ell == p:
        with pytest.raises(ValueError):
            v_ell_pow_minus_one(ell, p, i)
        return
    assert v_ell_pow_minus_one(ell, p, i) == v_ell(ell, p ** i - 1)


@pytest.mark.parametrize("a,m,expected", [(2, 9, 6), (1, 7, 1), (2, 25, 20)])
def test_mult_order_examples(a, m, expected):
    assert mult_order(a, m) == expected


@given(st.integers(2, 400), st.integers(1, 10 ** 6))
def test_mult_order_brute(m, a):
    from math import gcd
    if gcd(a, m) != 1:
        with pytest.raises(NotAUnit):
            mult_order(a, m)
    else:
        assert mult_order(a, m) == brute_order(a, m)


@pytest.mark.parametrize("ell,forbidden,expected", [(3, (), 2), (5, (), 2), (3, {2}, 5)])
def test_find_minkowski_prime(ell, forbidden, expected):
    p = find_minkowski_prime(ell, forbidden)
    assert p == expected
    assert is_minkowski_prime(p, ell)


def test_minkowski_prime_search_errors():
    with pytest.raises(ValueError):
        find_minkowski_prime(2)
    with pytest.raises(SearchExhausted):
        find_minkowski_prime(7, forbidden={3, 5}, ceiling=10)


@pytest.mark.parametrize("ell", [3, 5, 7, 11, 13])
def test_minkowski_prime_valuation_rule(ell):
    # for such p, v(p^i - 1) is 0 unless (ell-1) | i, then 1 + v(i)
    p = find_minkowski_prime(ell)
    for i in range(1, 80):
        expected = 0 if i % (ell - 1) else 1 + v_ell(ell, i)
        assert v_ell_pow_minus_one(ell, p, i) == expected


def test_factorization_basics():
    f = Factorization.of(360)
    assert f.factors == {2: 3, 3: 2, 5: 1}
    assert f.value == 360
    assert str(f) == "2^3 * 3^2 * 5"
    assert f * Factorization({7: 1}) == Factorization.of(2520)
    assert Factorization({2: 0}).value == 1
    assert Factorization(f.to_record()) == f
    with pytest.raises(ValueError):
        Factorization({4: 1})
    with pytest.raises(ValueError):
        Factorization({2: -1})


@given(st.integers(1, 10 ** 12), st.integers(1, 10 ** 12))
def test_factorization_multiplies(a, b):
    assert (Factorization.of(a) * Factorization.of(b)).value == a * b
