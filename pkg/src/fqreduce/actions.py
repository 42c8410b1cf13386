"""Finite group actions on affine space over F_q, checked point by point.

All checks enumerate F_q^n exhaustively in contiguous index ranges; results
do not depend on how the range is split.  Nothing here samples.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd

import numpy as np
from sympy import factorint

from .fields import (
    FqContext,
    PolynomialMap,
    check_budget,
    point_chunks,
    point_tuple,
)


class PreconditionError(ValueError):
    """A theorem's hypothesis does not hold for the given input."""


# -- groups given by a multiplication table --------------------------------

class FiniteGroup:
    """Elements 0..m-1 with ``table[g][h] = g*h``."""

    def __init__(self, labels, table, identity):
        self.labels = [str(x) for x in labels]
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("group element labels must be distinct")
        index = {lab: i for i, lab in enumerate(self.labels)}
        m = len(self.labels)

        def lookup(x, where):
            if str(x) in index:
                return index[str(x)]
            if isinstance(x, int) and 0 <= x < m:
                return x
            raise ValueError(f"group table {where}: unknown element {x!r}")

        if len(table) != m or any(len(row) != m for row in table):
            raise ValueError(f"group table must be {m}x{m}")
        self.table = [[lookup(x, f"row {i}") for x in row]
                      for i, row in enumerate(table)]
        self.identity = lookup(identity, "identity")
        self.index = index

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def axiom_violation(self) -> dict | None:
        m, t, e = self.order, self.table, self.identity
        for g in range(m):
            if t[e][g] != g or t[g][e] != g:
                return {"kind": "identity", "g": self.labels[g]}
        for g in range(m):
            if not any(t[g][h] == e for h in range(m)):
                return {"kind": "inverse", "g": self.labels[g]}
        for g in range(m):
            for h in range(m):
                for k in range(m):
                    if t[t[g][h]][k] != t[g][t[h][k]]:
                        return {"kind": "associativity", "g": self.labels[g],
                                "h": self.labels[h], "k": self.labels[k]}
        return None

    def generators(self) -> list[int]:
        """A small generating set, chosen greedily in label order."""
        gens: list[int] = []
        span = {self.identity}
        for g in range(self.order):
            if g in span:
                continue
            gens.append(g)
            frontier = list(span)
            while frontier:
                new = []
                for x in frontier:
                    for s in gens:
                        y = self.table[x][s]
                        if y not in span:
                            span.add(y)
                            new.append(y)
                frontier = new
        return gens

    def to_record(self) -> dict:
        return {
            "elements": list(self.labels),
            "table": [[self.labels[x] for x in row] for row in self.table],
            "identity": self.labels[self.identity],
        }


def cyclic_group(m: int) -> FiniteGroup:
    return FiniteGroup([str(i) for i in range(m)],
                       [[(i + j) % m for j in range(m)] for i in range(m)], 0)


@dataclass
class ActionSpec:
    group: FiniteGroup
    maps: list[PolynomialMap]
    ctx: FqContext = field(init=False)
    n: int = field(init=False)

    def __post_init__(self):
        if len(self.maps) != self.group.order:
            raise ValueError("need exactly one map per group element")
        self.ctx, self.n = self.maps[0].ctx, self.maps[0].n
        for label, f in zip(self.group.labels, self.maps):
            if f.ctx != self.ctx:
                raise ValueError(f"map for {label} lives over a different field")
            if f.n != self.n:
                raise ValueError(f"map for {label} has dimension {f.n} != {self.n}")

    @property
    def size(self) -> int:
        return self.ctx.q ** self.n

    @classmethod
    def from_record(cls, rec: dict) -> "ActionSpec":
        for key in ("p", "n", "group", "maps"):
            if key not in rec:
                raise ValueError(f"action record is missing field {key!r}")
        ctx = FqContext(int(rec["p"]), int(rec.get("k", 1)), rec.get("modulus"))
        g = rec["group"]
        for key in ("elements", "table", "identity"):
            if key not in g:
                raise ValueError(f"group record is missing field {key!r}")
        group = FiniteGroup(g["elements"], g["table"], g["identity"])
        maps = []
        for label in group.labels:
            if label not in rec["maps"]:
                raise ValueError(f"maps: no entry for group element {label!r}")
            try:
                maps.append(PolynomialMap.from_record(ctx, int(rec["n"]),
                                                      rec["maps"][label]))
            except ValueError as exc:
                raise ValueError(f"maps[{label!r}]: {exc}") from None
        return cls(group, maps)

    def to_record(self) -> dict:
        rec = {"p": self.ctx.p, "k": self.ctx.k, "n": self.n,
               "group": self.group.to_record(),
               "maps": {lab: f.to_record()
                        for lab, f in zip(self.group.labels, self.maps)}}
        if self.ctx.k > 1:
            rec["modulus"] = list(self.ctx.modulus)
        return rec

    def point(self, idx: int):
        return point_tuple(self.ctx, int(idx), self.n)


def validate_action(a: ActionSpec, budget: int | None = None) -> dict | None:
    """None if ``a`` is a group action on F_q^n, else the first violation."""
    bad = a.group.axiom_violation()
    if bad:
        return bad
    check_budget(a.size, budget)
    G, labels = a.group, a.group.labels
    for idx in point_chunks(a.size):
        images = [f.apply(idx) for f in a.maps]
        moved = np.nonzero(images[G.identity] != idx)[0]
        if moved.size:
            return {"kind": "identity-map", "x": a.point(idx[moved[0]])}
        for g in range(G.order):
            for h in range(G.order):
                lhs = images[G.mul(g, h)]
                rhs = a.maps[g].apply(images[h])
                diff = np.nonzero(lhs != rhs)[0]
                if diff.size:
                    return {"kind": "composition", "g": labels[g], "h": labels[h],
                            "x": a.point(idx[diff[0]])}
    return None


def _stabilizer_sizes(a: ActionSpec, idx: np.ndarray, elements) -> np.ndarray:
    count = np.zeros(idx.shape[0], dtype=np.int64)
    for g in elements:
        count += a.maps[g].apply(idx) == idx
    return count


def fixed_point_indices(a: ActionSpec, budget: int | None = None,
                        generators_only: bool = False) -> np.ndarray:
    check_budget(a.size, budget)
    elements = a.group.generators() if generators_only else range(a.group.order)
    elements = list(elements)
    found = []
    for idx in point_chunks(a.size):
        found.append(idx[_stabilizer_sizes(a, idx, elements) == len(elements)])
    return np.concatenate(found) if found else np.zeros(0, dtype=np.int64)


def fixed_points(a: ActionSpec, budget: int | None = None) -> list:
    return [a.point(i) for i in fixed_point_indices(a, budget)]


def orbit_decomposition(a: ActionSpec, budget: int | None = None) -> list[int]:
    """Sorted orbit sizes; orbit size of x is |G| / |Stab(x)|."""
    check_budget(a.size, budget)
    m = a.group.order
    points_by_size: Counter[int] = Counter()
    for idx in point_chunks(a.size):
        stab = _stabilizer_sizes(a, idx, range(m))
        sizes, counts = np.unique(m // stab, return_counts=True)
        points_by_size.update(dict(zip(sizes.tolist(), counts.tolist())))
    orbits = []
    for size, npoints in sorted(points_by_size.items()):
        if npoints % size:
            raise AssertionError(f"{npoints} points in orbits of size {size}")
        orbits.extend([size] * (npoints // size))
    return orbits


def _prime_of_power(m: int) -> int | None:
    f = factorint(m)
    return next(iter(f)) if len(f) == 1 else None


@dataclass(frozen=True)
class CongruenceReport:
    group_order: int
    prime: int
    q: int
    n: int
    fixed_count: int
    passed: bool
    strong_holds: bool
    q_is_one_mod_p: bool

    @property
    def has_fixed_point(self) -> bool:
        return self.fixed_count > 0

    def to_record(self) -> dict:
        return {
            "check": "p-group fixed-point congruence",
            "group_order": self.group_order, "prime": self.prime,
            "q": self.q, "n": self.n, "fixed_count": self.fixed_count,
            "fixed_mod_p": self.fixed_count % self.prime,
            "qn_mod_p": pow(self.q, self.n, self.prime),
            "passed": self.passed, "has_fixed_point": self.has_fixed_point,
            "strong_holds": self.strong_holds,
            "q_is_one_mod_p": self.q_is_one_mod_p,
        }


def check_pgroup_congruence(a: ActionSpec, budget: int | None = None) -> CongruenceReport:
    """|Fix| = q^n (mod p) for a p-group acting with p prime to q.

    The stronger |Fix| = 1 (mod p) is reported too; it is only guaranteed when
    q = 1 (mod p).
    """
    m, q = a.group.order, a.ctx.q
    p = _prime_of_power(m)
    if p is None:
        raise PreconditionError(f"|G| = {m} is not a prime power")
    if gcd(p, q) != 1:
        raise PreconditionError(f"|G| = {m} is not prime to q = {q}")
    fixed = len(fixed_point_indices(a, budget))
    return CongruenceReport(
        group_order=m, prime=p, q=q, n=a.n, fixed_count=fixed,
        passed=(fixed - pow(q, a.n, p)) % p == 0,
        strong_holds=fixed % p == 1 % p,
        q_is_one_mod_p=q % p == 1 % p,
    )


@dataclass(frozen=True)
class TwoActionReport:
    m: int
    q: int
    n: int
    a: int
    a_prime: int
    passed: bool

    def to_record(self) -> dict:
        return {
            "check": "fixed-point congruence for two actions",
            "m": self.m, "q": self.q, "n": self.n,
            "a": self.a, "a_prime": self.a_prime,
            "a_mod_m": self.a % self.m, "a_prime_mod_m": self.a_prime % self.m,
            "qn_mod_m": pow(self.q, self.n, self.m), "passed": self.passed,
        }


def _free_off_fixed(a: ActionSpec, budget: int | None) -> int:
    """Number of fixed points; raises if some non-fixed point has a
    nontrivial stabiliser."""
    check_budget(a.size, budget)
    m = a.group.order
    fixed = 0
    for idx in point_chunks(a.size):
        stab = _stabilizer_sizes(a, idx, range(m))
        fixed += int(np.count_nonzero(stab == m))
        bad = np.nonzero((stab > 1) & (stab < m))[0]
        if bad.size:
            x = idx[bad[0]]
            g = next(g for g in range(m) if g != a.group.identity
                     and a.maps[g].apply(np.array([x]))[0] == x)
            raise PreconditionError(
                f"action is not free off its fixed points: {a.point(x)} is "
                f"fixed by {a.group.labels[g]!r}")
    return fixed


def check_two_actions(a1: ActionSpec, a2: ActionSpec,
                      budget: int | None = None) -> TwoActionReport:
    if a1.group.order != a2.group.order:
        raise PreconditionError("the two groups have different orders")
    if a1.ctx != a2.ctx or a1.n != a2.n:
        raise PreconditionError("the two actions live on different spaces")
    m, q, n = a1.group.order, a1.ctx.q, a1.n
    a = _free_off_fixed(a1, budget)
    b = _free_off_fixed(a2, budget)
    qn = pow(q, n, m)
    return TwoActionReport(m, q, n, a, b, passed=a % m == qn and b % m == qn)


@dataclass(frozen=True)
class Level:
    k: int
    size: int
    injective: bool
    surjective: bool
    image_size: int

    def to_record(self) -> dict:
        return {"k": self.k, "size": self.size, "injective": self.injective,
                "surjective": self.surjective, "image_size": self.image_size}


@dataclass(frozen=True)
class InjectivityReport:
    levels: list[Level]

    @property
    def violation(self) -> bool:
        return any(lv.injective and not lv.surjective for lv in self.levels)

    def to_record(self) -> dict:
        return {"check": "injective implies surjective",
                "levels": [lv.to_record() for lv in self.levels],
                "violation": self.violation}


def _level(f: PolynomialMap, k: int, budget: int | None) -> Level:
    total = f.ctx.q ** f.n
    check_budget(total, budget)
    images = np.empty(total, dtype=np.int64)
    for idx in point_chunks(total):
        images[idx] = f.apply(idx)
    hits = np.bincount(images, minlength=total)
    injective = bool(hits.max(initial=0) <= 1)
    surjective = bool((hits > 0).all())
    return Level(k, total, injective, surjective, int(np.count_nonzero(hits)))


def check_injective_bijective(f: PolynomialMap, max_extension: int = 1,
                              budget: int | None = None) -> InjectivityReport:
    """Injectivity and surjectivity of f on F_{q^k}^n for k = 1..max_extension."""
    levels = []
    for k in range(1, max_extension + 1):
        check_budget(f.ctx.q ** (k * f.n), budget)
        ext, embed = f.ctx.extension(k)
        levels.append(_level(f.base_change(ext, embed), k, budget))
    return InjectivityReport(levels)
