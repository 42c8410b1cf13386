"""Z/p acting on finite simplicial complexes and finite sets.

The cochains of X with F_p coefficients form a complex of modules over
F_p[G] = F_p[t]/(t^p), t = g - 1.  Restricting to the fixed subcomplex gives
0 -> I -> A -> B -> 0 with B constant; I is free as soon as no simplex is
stabilised without being fixed pointwise (an "admissible" action).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from sympy import isprime

from . import linalg as la
from .complexes import CochainComplex, ComplexSES
from .modules import TruncModule, TruncRing


def _sort_sign(seq) -> tuple[tuple[int, ...], int]:
    """Sorted tuple and the sign of the sorting permutation."""
    seq = list(seq)
    sign = 1
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                sign = -sign
    return tuple(sorted(seq)), sign


@dataclass
class GComplex:
    """Simplicial complex with a vertex permutation of prime order p."""
    p: int
    perm: list[int]
    simplices: list[tuple[int, ...]]

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        self.perm = [int(x) for x in self.perm]
        nv = len(self.perm)
        if sorted(self.perm) != list(range(nv)):
            raise ValueError("field 'perm': not a permutation")
        x = list(range(nv))
        for _ in range(self.p):
            x = [self.perm[v] for v in x]
        if x != list(range(nv)):
            raise ValueError("field 'perm': order does not divide p")
        given = [tuple(sorted(int(v) for v in s)) for s in self.simplices]
        for s in given:
            if not s or len(set(s)) != len(s) or any(not 0 <= v < nv for v in s):
                raise ValueError(f"field 'simplices': bad simplex {list(s)}")
        # the complex generated by the given simplices
        simp = {(v,) for v in range(nv)}
        for s in given:
            for k in range(1, len(s) + 1):
                simp.update(combinations(s, k))
        for s in simp:
            if tuple(sorted(self.perm[v] for v in s)) not in simp:
                raise ValueError(f"field 'simplices': {list(s)} not G-stable")
        self.simplices = sorted(simp, key=lambda s: (len(s), s))

    @property
    def top_dim(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    def of_dim(self, j: int) -> list[tuple[int, ...]]:
        return [s for s in self.simplices if len(s) == j + 1]

    def is_fixed(self, s) -> bool:
        return all(self.perm[v] == v for v in s)

    def inadmissible(self) -> tuple[int, ...] | None:
        """A simplex stabilised by g but not fixed pointwise, if any."""
        for s in self.simplices:
            if tuple(sorted(self.perm[v] for v in s)) == s and not self.is_fixed(s):
                return s
        return None

    def fixed_vertices(self) -> list[int]:
        return [v for v, w in enumerate(self.perm) if v == w]

    def to_record(self) -> dict:
        return {"p": self.p, "perm": self.perm,
                "simplices": [list(s) for s in self.simplices if len(s) > 1]}

    @classmethod
    def from_record(cls, rec: dict) -> "GComplex":
        for key in ("p", "perm", "simplices"):
            if key not in rec:
                raise ValueError(f"missing field '{key}'")
        return cls(int(rec["p"]), rec["perm"], [tuple(s) for s in rec["simplices"]])


def _g_matrix(gc: GComplex, cells) -> np.ndarray:
    idx = {s: k for k, s in enumerate(cells)}
    m = la.zeros(len(cells), len(cells))
    for k, s in enumerate(cells):
        img, sign = _sort_sign(gc.perm[v] for v in s)
        m[k, idx[img]] = sign % gc.p
    return m


def _coboundary(cells, higher, p) -> np.ndarray:
    idx = {s: k for k, s in enumerate(cells)}
    d = la.zeros(len(higher), len(cells))
    for r, tau in enumerate(higher):
        for k in range(len(tau)):
            face = tau[:k] + tau[k + 1:]
            d[r, idx[face]] = (d[r, idx[face]] + (-1) ** k) % p
    return d


def smith_triple(gc: GComplex) -> ComplexSES:
    """Cochains of X, of X^G, and of the pair (X, X^G)."""
    bad = gc.inadmissible()
    if bad is not None:
        raise ValueError(f"simplex {list(bad)} is stabilised but not fixed pointwise")
    p = gc.p
    ring = TruncRing(p, p)
    cells = [gc.of_dim(j) for j in range(max(gc.top_dim, 0) + 1)]
    fixed = [[k for k, s in enumerate(c) if gc.is_fixed(s)] for c in cells]
    moved = [[k for k, s in enumerate(c) if not gc.is_fixed(s)] for c in cells]
    tA = [(_g_matrix(gc, c) - la.eye(len(c))) % p for c in cells]
    dA = [_coboundary(cells[j], cells[j + 1], p) for j in range(len(cells) - 1)]
    A = CochainComplex(ring, [TruncModule(ring, t) for t in tA], dA)
    I = CochainComplex(ring, [TruncModule(ring, t[np.ix_(m, m)]) for t, m in zip(tA, moved)],
                       [d[np.ix_(moved[j + 1], moved[j])] for j, d in enumerate(dA)])
    B = CochainComplex(ring, [TruncModule(ring, t[np.ix_(f, f)]) for t, f in zip(tA, fixed)],
                       [d[np.ix_(fixed[j + 1], fixed[j])] for j, d in enumerate(dA)])
    inj = [la.eye(len(c))[:, m] for c, m in zip(cells, moved)]
    surj = [la.eye(len(c))[f, :] for c, f in zip(cells, fixed)]
    return ComplexSES(I, A, B, inj, surj)


def gset(p: int, fixed: int, free_orbits: int) -> GComplex:
    """Z/p acting on `fixed` points and `free_orbits` regular orbits."""
    perm = list(range(fixed))
    for r in range(free_orbits):
        base = fixed + r * p
        perm += [base + (s + 1) % p for s in range(p)]
    return GComplex(p, perm, [])


def gsets_upto(p: int, size: int):
    """One representative per isomorphism class of Z/p-sets with <= size points."""
    for r in range(size // p + 1):
        for f in range(size - r * p + 1):
            yield f, r, gset(p, f, r)


class _Builder:
    def __init__(self, p: int):
        self.p = p
        self.perm: list[int] = []

    def fixed(self) -> int:
        self.perm.append(len(self.perm))
        return len(self.perm) - 1

    def orbit(self) -> list[int]:
        base = len(self.perm)
        self.perm += [base + (s + 1) % self.p for s in range(self.p)]
        return list(range(base, base + self.p))

    def g(self, v: int, k: int = 1) -> int:
        for _ in range(k):
            v = self.perm[v]
        return v


def _edge_orbit(b: _Builder, x: int, y: int) -> set[tuple[int, ...]]:
    return {tuple(sorted((b.g(x, k), b.g(y, k)))) for k in range(b.p)}


def random_gtree(p: int, max_vertices: int, seed: int) -> GComplex:
    """A tree with a Z/p action: a fixed subtree with orbits of branches hung on it."""
    rng = np.random.default_rng(seed)
    b = _Builder(p)
    b.fixed()
    edges: set[tuple[int, ...]] = set()
    while True:
        room = max_vertices - len(b.perm)
        if room < 1:
            break
        if room >= p and rng.random() < 0.6:
            u = int(rng.integers(len(b.perm)))
            for s, v in enumerate(b.orbit()):
                edges.add(tuple(sorted((v, b.g(u, s)))))
        elif rng.random() < 0.5:
            fx = [v for v in range(len(b.perm)) if b.perm[v] == v]
            u = int(rng.choice(fx))
            edges.add(tuple(sorted((b.fixed(), u))))
        else:
            break
    return GComplex(p, b.perm, sorted(edges))


def random_ggraph(p: int, fixed: int, orbits: int, edge_orbits: int,
                  seed: int) -> GComplex:
    """Random graph with an admissible Z/p action (no flipped edges)."""
    rng = np.random.default_rng(seed)
    b = _Builder(p)
    for _ in range(fixed):
        b.fixed()
    for _ in range(orbits):
        b.orbit()
    nv = len(b.perm)
    edges: set[tuple[int, ...]] = set()
    for _ in range(edge_orbits):
        if nv < 2:
            break
        x, y = (int(v) for v in rng.choice(nv, size=2, replace=False))
        if p == 2 and b.g(x) == y:
            continue
        edges |= _edge_orbit(b, x, y)
    return GComplex(p, b.perm, sorted(edges))


def cone(gc: GComplex) -> GComplex:
    """Cone with a fixed apex; contractible, and admissible if gc is."""
    apex = len(gc.perm)
    simp = [tuple(s) + (apex,) for s in gc.simplices] + list(gc.simplices)
    return GComplex(gc.p, gc.perm + [apex], simp)


def random_contractible(p: int, seed: int, max_vertices: int = 12) -> GComplex:
    rng = np.random.default_rng(seed)
    if rng.random() < 0.5:
        return random_gtree(p, max_vertices, int(rng.integers(2**31)))
    room = max_vertices - 1
    orbits = int(rng.integers(0, room // p + 1))
    fixed = int(rng.integers(0, room - orbits * p + 1))
    g = random_ggraph(p, fixed, orbits, int(rng.integers(0, 2 * (fixed + orbits) + 1)),
                      int(rng.integers(2**31)))
    return cone(g)
