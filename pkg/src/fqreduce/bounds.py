"""Minkowski's bound for finite subgroups of GL_n(Q) and its Lie-type analogue.

``lie_bound`` replaces the existence argument (Dirichlet / Chebotarev) by an
explicit minimisation over a window of reduction primes and reports the
witness prime, so every exponent in a report can be re-checked by hand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from sympy import factorint, isprime, primerange

from .lie import LieTypeData, builtin_type, degree_valuations
from .valuation import Factorization, v_ell

# c(d) for quadratic fields of discriminant d; every other d gives 1
QUADRATIC_FACTOR = {
    8: {2: 8},
    5: {5: 5},
    13: {13: 2},
    17: {17: 2},
    29: {29: 1},
    37: {37: 1},
    41: {41: 1},
    61: {61: 1},
}


def minkowski_exponent(n: int, ell: int) -> int:
    """M(n, ell) = sum_k floor(n / (ell^k (ell - 1)))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not isprime(ell):
        raise ValueError(f"ell={ell} is not a prime")
    total, denom = 0, ell - 1
    while denom <= n:
        total += n // denom
        denom *= ell
    return total


def minkowski_bound(n: int) -> Factorization:
    return Factorization({ell: minkowski_exponent(n, ell)
                          for ell in primerange(2, n + 2)})


def sum_characterization(n: int, ell: int) -> int:
    """sum of 1 + v_ell(i) over 1 <= i <= n with (ell - 1) | i.

    Equals ``minkowski_exponent(n, ell)`` for odd ell; at ell = 2 it does not,
    so 2 is rejected.
    """
    if ell == 2:
        raise ValueError("the sum characterisation only holds for odd ell")
    if not isprime(ell):
        raise ValueError(f"ell={ell} is not a prime")
    return sum(1 + v_ell(ell, i) for i in range(ell - 1, n + 1, ell - 1))


@dataclass(frozen=True)
class EllRow:
    ell: int
    exponent: int
    witness: int
    valuations: tuple[int, ...]
    upper_bound_only: bool = False

    def to_record(self) -> dict:
        rec = {
            "prime": self.ell,
            "exponent": self.exponent,
            "witness": self.witness,
            "valuations": list(self.valuations),
        }
        if self.upper_bound_only:
            rec["upper_bound_only"] = True
        return rec


@dataclass(frozen=True)
class BoundReport:
    target: str
    rows: dict[int, EllRow]
    total: Factorization
    degrees: tuple[int, ...] = field(default=())

    def __post_init__(self):
        for ell, row in self.rows.items():
            if self.total.exponent(ell) != row.exponent:
                raise AssertionError(f"total disagrees with row at {ell}")

    def to_record(self) -> dict:
        return {
            "target": self.target,
            "degrees": list(self.degrees),
            "rows": [row.to_record() for row in self.rows.values()],
            "total": self.total.to_record(),
            "value": str(self.total.value),
        }


def candidate_ells(degrees) -> list[int]:
    # if ell - 1 > max(d), a p of order ell - 1 mod ell divides no p^d - 1
    return list(primerange(2, max(degrees) + 2))


@lru_cache(maxsize=None)
def _primes_upto(ceiling: int) -> tuple[int, ...]:
    return tuple(primerange(2, ceiling + 1))


def _minimise(t: LieTypeData, ell: int, primes) -> EllRow:
    best = None
    for p in primes:
        if p == ell:
            continue
        vals = degree_valuations(t, p, ell)
        s = sum(vals)
        if best is None or s < best[0]:
            best = (s, p, tuple(vals))
            if s == 0:
                break
    if best is None:
        raise ValueError(f"no admissible reduction prime for ell={ell}")
    is_gl = t.label.startswith("GL")
    return EllRow(ell, best[0], best[1], best[2],
                  upper_bound_only=is_gl and ell == 2)


def lie_bound(t: LieTypeData, prime_ceiling: int = 10 ** 4) -> BoundReport:
    """Per-ell minimum of v_ell(|G(F_p)|) over primes p <= prime_ceiling.

    For GL at ell = 2 the GL minimum is reported but flagged as an upper bound
    only; the sharp 2-part needs orthogonal groups.
    """
    if prime_ceiling < 100:
        raise ValueError("prime_ceiling must be at least 100")
    primes = _primes_upto(prime_ceiling)
    rows = {}
    for ell in candidate_ells(t.degrees):
        row = _minimise(t, ell, primes)
        if row.exponent:
            rows[ell] = row
    total = Factorization({ell: row.exponent for ell, row in rows.items()})
    return BoundReport(t.label, rows, total, t.degrees)


@lru_cache(maxsize=4)
def e8_bound(prime_ceiling: int = 10 ** 4) -> Factorization:
    return lie_bound(builtin_type("E8"), prime_ceiling).total


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(m: int) -> bool:
    return all(e == 1 for e in factorint(abs(m)).values())


def quadratic_factor(d: int) -> Factorization:
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    return Factorization(QUADRATIC_FACTOR.get(d, {}))


def quadratic_field_bound(d: int, prime_ceiling: int = 10 ** 4) -> Factorization:
    """c(d) * M(Q, E8) for the quadratic field of discriminant d."""
    return quadratic_factor(d) * e8_bound(prime_ceiling)


class Divisibility(NamedTuple):
    ok: bool
    offending: list[int]


def divides_check(order: Factorization, bound: Factorization) -> Divisibility:
    bad = [p for p, e in order if e > bound.exponent(p)]
    return Divisibility(not bad, bad)
