"""Exact l-adic valuations, multiplicative orders and Minkowski primes.

Everything here works on Python ints, so there is no overflow anywhere:
``p**30 - 1`` for the E8 degrees is computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping

from sympy import factorint, isprime, primerange, totient


class UndefinedValuation(ValueError):
    """The valuation of 0 is not a finite integer."""


class NotAUnit(ValueError):
    pass


class SearchExhausted(RuntimeError):
    pass


DEFAULT_PRIME_CEILING = 10 ** 6


def _require_prime(ell: int, name: str = "ell") -> None:
    if not isinstance(ell, int) or ell < 2 or not isprime(ell):
        raise ValueError(f"{name}={ell!r} is not a prime")


@dataclass(frozen=True)
class Factorization:
    """A positive integer stored as ``{prime: exponent}``; ``{}`` is 1."""

    factors: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for prime, exp in self.factors.items():
            prime, exp = int(prime), int(exp)
            if exp < 0:
                raise ValueError(f"negative exponent {exp} at {prime}")
            if exp == 0:
                continue
            _require_prime(prime, "factor")
            clean[prime] = exp
        object.__setattr__(self, "factors", dict(sorted(clean.items())))

    @classmethod
    def of(cls, n: int) -> "Factorization":
        if n < 1:
            raise ValueError("only positive integers have a Factorization")
        return cls(factorint(n))

    def exponent(self, prime: int) -> int:
        return self.factors.get(prime, 0)

    @property
    def value(self) -> int:
        out = 1
        for prime, exp in self.factors.items():
            out *= prime ** exp
        return out

    def __mul__(self, other: "Factorization") -> "Factorization":
        merged = dict(self.factors)
        for prime, exp in other.factors.items():
            merged[prime] = merged.get(prime, 0) + exp
        return Factorization(merged)

    def __iter__(self):
        return iter(self.factors.items())

    def __eq__(self, other):
        if not isinstance(other, Factorization):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self):
        return hash(tuple(self.factors.items()))

    def __str__(self):
        if not self.factors:
            return "1"
        return " * ".join(
            str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors.items()
        )

    def to_record(self) -> dict[str, int]:
        return {str(p): e for p, e in self.factors.items()}


def v_ell(ell: int, n: int) -> int:
    """Largest e with ell**e dividing n (sign ignored)."""
    _require_prime(ell)
    if n == 0:
        raise UndefinedValuation("v_ell(0) is undefined")
    n = abs(n)
    e = 0
    while n % ell == 0:
        n //= ell
        e += 1
    return e


def mult_order(a: int, m: int) -> int:
    """Smallest e >= 1 with a**e == 1 (mod m)."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    a %= m
    if gcd(a, m) != 1:
        raise NotAUnit(f"{a} is not a unit modulo {m}")
    order = int(totient(m))
    for r in factorint(order):
        while order % r == 0 and pow(a, order // r, m) == 1:
            order //= r
    return order


def _v_pow_minus_one_direct(ell: int, p: int, i: int) -> int:
    return v_ell(ell, p ** i - 1)


def _v_pow_minus_one_lifting(ell: int, p: int, i: int) -> int:
    # lifting-the-exponent; d = ord_ell(p) divides ell - 1, so v(i/d) = v(i)
    if ell == 2:
        if i % 2:
            return v_ell(2, p - 1)
        return v_ell(2, p - 1) + v_ell(2, p + 1) + v_ell(2, i) - 1
    d = mult_order(p, ell)
    if i % d:
        return 0
    return v_ell(ell, p ** d - 1) + v_ell(ell, i // d)


def v_ell_pow_minus_one(ell: int, p: int, i: int) -> int:
    """v_ell(p**i - 1), computed directly and by the lifting formula.

    The two routes must agree; disagreement raises ``ArithmeticError``.
    """
    _require_prime(ell)
    _require_prime(p, "p")
    if p == ell:
        raise ValueError("p must differ from ell")
    if i < 1:
        raise ValueError("i must be a positive integer")
    direct = _v_pow_minus_one_direct(ell, p, i)
    lifted = _v_pow_minus_one_lifting(ell, p, i)
    if direct != lifted:
        raise ArithmeticError(
            f"v_{ell}({p}^{i}-1): direct {direct} != lifting {lifted}"
        )
    return direct


def is_minkowski_prime(p: int, ell: int) -> bool:
    """True when p generates the cyclic group (Z/ell^2 Z)*."""
    if p % ell == 0:
        return False
    return mult_order(p, ell * ell) == ell * (ell - 1)


def find_minkowski_prime(
    ell: int,
    forbidden: Iterable[int] = (),
    ceiling: int = DEFAULT_PRIME_CEILING,
) -> int:
    """Smallest prime outside ``forbidden`` whose class generates (Z/ell^2)*."""
    _require_prime(ell)
    if ell == 2:
        raise ValueError("ell = 2 is not supported: (Z/4Z)* is too small to "
                         "give the odd-prime valuation rule")
    banned = set(forbidden) | {ell}
    for p in primerange(2, ceiling + 1):
        if p not in banned and is_minkowski_prime(p, ell):
            return p
    raise SearchExhausted(f"no Minkowski prime for ell={ell} below {ceiling}")
