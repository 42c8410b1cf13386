"""Common zeros of integer polynomial systems: mod-p search and certificates.

The two mechanisms are deliberately one-sided.  A certificate
``sum P_j Q_j = 1`` proves there is no common zero over C (and over every
field whose characteristic does not divide the certificate's denominators).
Solvability modulo many primes is only evidence for a complex zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement
from math import gcd, lcm

import numpy as np
from sympy import factorint, primerange

from . import BudgetExceeded
from .fields import (
    FqContext,
    check_budget,
    decode_points,
    eval_terms,
    get_field,
    point_chunks,
    point_tuple,
)

Poly = dict  # exponent tuple -> int | Fraction, zero coefficients absent

EVIDENCE_FOR = "EVIDENCE-FOR"
EVIDENCE_AGAINST = "EVIDENCE-AGAINST"
INCONCLUSIVE = "INCONCLUSIVE"


def poly_from_terms(terms, n: int, coerce=int) -> Poly:
    out: Poly = {}
    for ti, term in enumerate(terms):
        if not (isinstance(term, (list, tuple)) and len(term) == 2):
            raise ValueError(f"term {ti}: expected [coeff, [e...]]")
        coeff, exps = term
        exps = tuple(int(e) for e in exps)
        if len(exps) != n or any(e < 0 for e in exps):
            raise ValueError(f"term {ti}: bad exponent vector {list(exps)}")
        c = out.get(exps, 0) + coerce(coeff)
        if c:
            out[exps] = c
        else:
            out.pop(exps, None)
    return out


def poly_to_terms(f: Poly, fmt=lambda c: c) -> list:
    return [[fmt(c), list(e)] for e, c in sorted(f.items(), key=lambda it: (sum(it[0]), it[0]))]


def poly_mul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def poly_add(f: Poly, g: Poly) -> Poly:
    out = dict(f)
    for e, c in g.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def monomials_upto(n: int, degree: int) -> list[tuple[int, ...]]:
    """Monomials of total degree <= degree in graded lexicographic order."""
    out = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for v in combo:
                e[v] += 1
            out.append(tuple(e))
    return sorted(out, key=lambda e: (sum(e), e))


@dataclass(frozen=True)
class IntPolySystem:
    n: int
    polys: tuple

    def __post_init__(self):
        for j, f in enumerate(self.polys):
            for e, c in f.items():
                if len(e) != self.n:
                    raise ValueError(f"poly {j}: exponent vector length != {self.n}")
                if not isinstance(c, int) or c == 0:
                    raise ValueError(f"poly {j}: coefficients must be nonzero ints")

    @classmethod
    def from_record(cls, rec: dict) -> "IntPolySystem":
        if "n" not in rec or "polys" not in rec:
            raise ValueError("system record needs fields 'n' and 'polys'")
        n = int(rec["n"])
        polys = []
        for j, terms in enumerate(rec["polys"]):
            try:
                polys.append(poly_from_terms(terms, n))
            except ValueError as exc:
                raise ValueError(f"polys[{j}]: {exc}") from None
        return cls(n, tuple(polys))

    def to_record(self) -> dict:
        return {"n": self.n, "polys": [poly_to_terms(f) for f in self.polys]}


# -- mod p search ------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    p: int
    k: int
    point: list


def _system_terms(s: IntPolySystem, ctx: FqContext):
    out = []
    for f in s.polys:
        terms = {}
        for e, c in f.items():
            c = c % ctx.p
            if c:
                terms[e] = c
        out.append(tuple((c, e) for e, c in terms.items()))
    return out


def solve_over(s: IntPolySystem, ctx: FqContext,
               budget: int | None = None) -> int | None:
    """Index of the first common zero in ctx^n, or None."""
    total = ctx.q ** s.n
    check_budget(total, budget)
    systems = _system_terms(s, ctx)
    for idx in point_chunks(total):
        pts = decode_points(ctx, idx, s.n)
        ok = np.ones(idx.shape[0], dtype=bool)
        for terms in systems:
            ok &= eval_terms(ctx, terms, pts) == 0
        hits = np.nonzero(ok)[0]
        if hits.size:
            return int(idx[hits[0]])
    return None


def modp_solve(s: IntPolySystem, p: int, k_max: int = 1,
               budget: int | None = None) -> Witness | None:
    """First common zero over F_{p^k}, trying k = 1..k_max in turn."""
    for k in range(1, k_max + 1):
        ctx = get_field(p, k)
        hit = solve_over(s, ctx, budget)
        if hit is not None:
            return Witness(p, k, point_tuple(ctx, hit, s.n))
    return None


# -- certificates ------------------------------------------------------------

def _fmt_fraction(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class Certificate:
    """Cofactors with sum(polys[j] * cofactors[j]) == 1, re-verified on creation."""

    system: IntPolySystem
    cofactors: tuple
    degree: int

    def __post_init__(self):
        if len(self.cofactors) != len(self.system.polys):
            raise ValueError("need one cofactor per polynomial")
        total: Poly = {}
        for f, q in zip(self.system.polys, self.cofactors):
            total = poly_add(total, poly_mul(f, q))
        one = {(0,) * self.system.n: 1}
        if total != one:
            raise ValueError("cofactors do not combine to 1")

    def to_record(self) -> dict:
        rec = self.system.to_record()
        rec["degree"] = self.degree
        rec["cofactors"] = [poly_to_terms(q, _fmt_fraction) for q in self.cofactors]
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "Certificate":
        system = IntPolySystem.from_record(rec)
        if "cofactors" not in rec:
            raise ValueError("certificate record needs field 'cofactors'")
        cofs = []
        for j, terms in enumerate(rec["cofactors"]):
            try:
                cofs.append(poly_from_terms(terms, system.n, Fraction))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"cofactors[{j}]: {exc}") from None
        return cls(system, tuple(cofs), int(rec.get("degree", 0)))

    @property
    def denominator(self) -> int:
        dens = [Fraction(c).denominator for q in self.cofactors for c in q.values()]
        return reduce(lcm, dens, 1)


def _row_content(row: list[int]) -> list[int]:
    g = reduce(gcd, row, 0)
    if g > 1:
        row = [x // g for x in row]
    return row


def solve_rational(rows: list[list[int]], rhs: list[int],
                   ncols: int) -> list[Fraction] | None:
    """Exact solution of A x = b with free variables set to 0, or None.

    Fraction-free Gauss-Jordan: rows stay integral (divided by their content
    after each step); pivots are the first nonzero entry in column order.
    """
    M = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        top = M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                a, b = top[c], M[i][c]
                M[i] = _row_content([a * x - b * y for x, y in zip(M[i], top)])
        pivots.append((r, c))
        r += 1
        if r == len(M):
            break
    for i in range(r, len(M)):
        if M[i][-1]:
            return None
    x = [Fraction(0)] * ncols
    for i, c in pivots:
        x[c] = Fraction(M[i][-1], M[i][c])
    return x


DEFAULT_MAX_UNKNOWNS = 3000


def certificate_search(s: IntPolySystem, degree: int,
                       max_unknowns: int = DEFAULT_MAX_UNKNOWNS) -> Certificate | None:
    """Cofactors of total degree <= ``degree``, or None at this degree.

    None does not prove that a common zero exists.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    monos = monomials_upto(s.n, degree)
    unknowns = [(j, mu) for j in range(len(s.polys)) for mu in monos]
    if len(unknowns) > max_unknowns:
        raise BudgetExceeded(
            f"{len(unknowns)} unknowns exceed the linear-system budget {max_unknowns}")
    columns: dict[tuple[int, ...], dict[int, int]] = {}
    for col, (j, mu) in enumerate(unknowns):
        for e, c in s.polys[j].items():
            m = tuple(a + b for a, b in zip(e, mu))
            columns.setdefault(m, {})[col] = c
    one = (0,) * s.n
    columns.setdefault(one, {})
    eqs = sorted(columns, key=lambda e: (sum(e), e))
    rows = [[columns[m].get(col, 0) for col in range(len(unknowns))] for m in eqs]
    rhs = [int(m == one) for m in eqs]
    x = solve_rational(rows, rhs, len(unknowns))
    if x is None:
        return None
    cofs = [dict() for _ in s.polys]
    for (j, mu), val in zip(unknowns, x):
        if val:
            cofs[j][mu] = val
    return Certificate(s, tuple(cofs), degree)


def certificate_char_report(cert: Certificate) -> list[int]:
    """Primes dividing the common denominator d of the cofactors.

    Multiplying through gives d = sum P_j (d Q_j) with integral cofactors, so
    in characteristic p not dividing d the system has no common zero.
    """
    return sorted(factorint(cert.denominator))


def search_certificate_upto(s: IntPolySystem, max_degree: int,
                            max_unknowns: int = DEFAULT_MAX_UNKNOWNS):
    for d in range(max_degree + 1):
        try:
            cert = certificate_search(s, d, max_unknowns)
        except BudgetExceeded:
            return None
        if cert is not None:
            return cert
    return None


# -- survey -----------------------------------------------------------------

@dataclass
class SurveyReport:
    ceiling: int
    k_max: int
    solvable: dict[int, int | None]         # p -> smallest k, None if none
    skipped: list[int] = field(default_factory=list)
    certificate: Certificate | None = None
    excluded: list[int] = field(default_factory=list)
    verdict: str = INCONCLUSIVE
    duality_violations: list[int] = field(default_factory=list)

    @property
    def primes(self) -> list[int]:
        return sorted(self.solvable)

    def fraction_solvable(self, k: int | None = None) -> float:
        if not self.solvable:
            return 0.0
        hit = [v for v in self.solvable.values()
               if v is not None and (k is None or v <= k)]
        return len(hit) / len(self.solvable)

    def summary(self) -> str:
        if self.verdict == EVIDENCE_AGAINST:
            excl = ", ".join(map(str, self.excluded)) or "none"
            return ("certificate found: no common zero over C, nor in any "
                    f"characteristic outside {{{excl}}}")
        if self.verdict == EVIDENCE_FOR:
            return ("solvable modulo every surveyed prime in the upper half of "
                    "the window: evidence (not proof) of a common zero over C")
        return "inconclusive: no certificate found and solvability is sporadic"

    def to_record(self) -> dict:
        return {
            "check": "common zero survey",
            "ceiling": self.ceiling, "k_max": self.k_max,
            "solvable": {str(p): k for p, k in sorted(self.solvable.items())},
            "skipped": self.skipped,
            "fraction_k1": self.fraction_solvable(1),
            "fraction_any": self.fraction_solvable(),
            "certificate_degree": None if self.certificate is None
            else self.certificate.degree,
            "excluded": self.excluded,
            "verdict": self.verdict,
            "duality_violations": self.duality_violations,
        }


def prime_survey(s: IntPolySystem, ceiling: int = 100, k_max: int = 1,
                 cert_degree: int = 2, budget: int | None = None) -> SurveyReport:
    """Solvability over F_{p^k} (k <= k_max) for every prime p <= ceiling.

    Verdicts: EVIDENCE-AGAINST when a certificate of degree <= cert_degree
    exists; EVIDENCE-FOR when every prime in (ceiling/2, ceiling] is solvable
    (finitely many small exceptions are tolerated); INCONCLUSIVE otherwise.
    Primes whose search space exceeds the budget are listed as skipped.
    """
    solvable: dict[int, int | None] = {}
    skipped = []
    for p in primerange(2, ceiling + 1):
        try:
            w = modp_solve(s, p, k_max, budget)
        except BudgetExceeded:
            skipped.append(p)
            continue
        solvable[p] = None if w is None else w.k
    report = SurveyReport(ceiling, k_max, solvable, skipped)
    cert = search_certificate_upto(s, cert_degree)
    if cert is not None:
        report.certificate = cert
        report.excluded = certificate_char_report(cert)
        report.verdict = EVIDENCE_AGAINST
        report.duality_violations = [
            p for p, k in solvable.items()
            if k is not None and p not in report.excluded]
    else:
        upper = [p for p in solvable if 2 * p > ceiling]
        if upper and all(solvable[p] is not None for p in upper):
            report.verdict = EVIDENCE_FOR
    return report
