"""Finite-dimensional modules over R = F_p[t]/(t^n), given by t-action matrices."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from sympy import isprime

from . import linalg as la


class HypothesisViolation(ValueError):
    """Input does not satisfy the hypotheses of the statement being checked."""


@dataclass(frozen=True)
class TruncRing:
    p: int
    n: int

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.n < 2:
            raise ValueError(f"truncation order n must be >= 2, got {self.n}")


def _read_matrix(raw, rows: int, cols: int, name: str) -> np.ndarray:
    try:
        a = np.array(raw, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"field '{name}': not an integer matrix") from exc
    if a.size != rows * cols:
        raise ValueError(f"field '{name}': expected {rows}x{cols} entries, got {a.size}")
    return a.reshape(rows, cols)


class TruncModule:
    def __init__(self, ring: TruncRing, t_action):
        t = np.asarray(t_action, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise ValueError("t_action must be a square matrix")
        self.ring = ring
        self.t = t % ring.p
        if not la.is_zero(la.matpow(self.t, ring.n, ring.p), ring.p):
            raise ValueError(f"t_action is not killed by t^{ring.n}")

    @property
    def dim(self) -> int:
        return self.t.shape[0]

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def n(self) -> int:
        return self.ring.n

    def tpow(self, e: int) -> np.ndarray:
        return la.matpow(self.t, e, self.p)

    def image_tpow(self, e: int) -> np.ndarray:
        """Basis of t^e A."""
        return la.colspace(self.tpow(e), self.p)

    def kernel_tpow(self, e: int) -> np.ndarray:
        """Basis of A_{t^e}."""
        return la.nullspace(self.tpow(e), self.p)

    def whole(self) -> np.ndarray:
        return la.eye(self.dim)

    def to_record(self) -> dict:
        return {"p": self.p, "n": self.n, "dim": self.dim,
                "t_action": self.t.tolist()}

    @classmethod
    def from_record(cls, rec: dict, ring: TruncRing | None = None) -> "TruncModule":
        if not isinstance(rec, dict):
            raise ValueError("module record must be an object")
        for key in ("p", "n", "dim", "t_action"):
            if key not in rec:
                raise ValueError(f"missing field '{key}'")
        r = TruncRing(int(rec["p"]), int(rec["n"]))
        if ring is not None and r != ring:
            raise ValueError("field 'p'/'n': modules over different rings")
        d = int(rec["dim"])
        return cls(r, _read_matrix(rec["t_action"], d, d, "t_action"))

    def __eq__(self, other):
        return (isinstance(other, TruncModule) and self.ring == other.ring
                and np.array_equal(self.t, other.t))

    __hash__ = None


def jordan_matrix(blocks, p: int = 2) -> np.ndarray:
    """Nilpotent matrix with the given Jordan block sizes, t e_j = e_{j+1}."""
    d = sum(blocks)
    t = la.zeros(d, d)
    pos = 0
    for s in blocks:
        for j in range(s - 1):
            t[pos + j + 1, pos + j] = 1
        pos += s
    return t


def module_from_blocks(ring: TruncRing, blocks) -> TruncModule:
    if any(s < 1 or s > ring.n for s in blocks):
        raise ValueError(f"block sizes must lie in 1..{ring.n}")
    return TruncModule(ring, jordan_matrix(list(blocks)))


def free_module(ring: TruncRing, rank: int) -> TruncModule:
    return module_from_blocks(ring, [ring.n] * rank)


def constant_module(ring: TruncRing, dim: int) -> TruncModule:
    return TruncModule(ring, la.zeros(dim, dim))


def jordan_blocks(m: TruncModule) -> list[int]:
    """Block sizes in decreasing order, from the ranks of powers of t."""
    ranks = [m.dim] + [la.rank(m.tpow(s), m.p) for s in range(1, m.n + 1)]
    at_least = [ranks[s - 1] - ranks[s] for s in range(1, m.n + 1)]
    out = []
    for s in range(m.n, 0, -1):
        exactly = at_least[s - 1] - (at_least[s] if s < m.n else 0)
        out.extend([s] * exactly)
    return out


def is_constant(m: TruncModule) -> bool:
    return la.is_zero(m.t, m.p)


def _free_via_map(m: TruncModule) -> bool:
    # A/tA -> t^{n-1}A induced by t^{n-1}
    src = la.Subquotient(m.whole(), m.image_tpow(1), m.p, m.dim)
    dst = la.Subquotient(m.image_tpow(m.n - 1), la.zeros(m.dim, 0), m.p, m.dim)
    f = la.induced_map(m.tpow(m.n - 1), src, dst)
    return src.dim == dst.dim and la.rank(f, m.p) == src.dim


def _free_via_kernel(m: TruncModule) -> bool:
    ker = m.kernel_tpow(m.n - 1)
    img = m.image_tpow(1)
    return (ker.shape[1] == img.shape[1]
            and la.span_contains(ker, img, m.p))


def is_free(m: TruncModule) -> bool:
    answers = {_free_via_map(m), _free_via_kernel(m),
               all(s == m.n for s in jordan_blocks(m))}
    if len(answers) != 1:
        raise ArithmeticError("freeness criteria disagree")
    return answers.pop()


def classify(m: TruncModule) -> dict:
    blocks = jordan_blocks(m)
    return {"dim": m.dim, "blocks": blocks, "free": is_free(m),
            "constant": is_constant(m)}


@dataclass
class HModule:
    """h_i(Y) = Y_{t^i} / t^{n-i} Y with an explicit basis and induced t."""
    source: TruncModule
    i: int
    space: la.Subquotient
    module: TruncModule

    @property
    def dim(self) -> int:
        return self.space.dim


def h_functor(m: TruncModule, i: int) -> HModule:
    if not 1 <= i <= m.n - 1:
        raise ValueError(f"i must lie in 1..{m.n - 1}, got {i}")
    sq = la.Subquotient(m.kernel_tpow(i), m.image_tpow(m.n - i), m.p, m.dim)
    t = la.induced_map(m.t, sq, sq)
    return HModule(m, i, sq, TruncModule(m.ring, t))


def h_dim_from_blocks(blocks, n: int, i: int) -> int:
    return sum(min(i, s) - max(0, s - (n - i)) for s in blocks)


def _commutes(f, ta, tb, p) -> bool:
    # f: A -> B with f t_A = t_B f
    return la.is_zero((f @ ta - tb @ f) % p, p)


@dataclass
class ShortExactSeq:
    I: TruncModule
    A: TruncModule
    B: TruncModule
    inj: np.ndarray
    surj: np.ndarray
    ring: TruncRing = field(init=False)

    def __post_init__(self):
        self.ring = self.A.ring
        if not (self.I.ring == self.ring == self.B.ring):
            raise ValueError("modules live over different rings")
        p = self.ring.p
        self.inj = np.asarray(self.inj, dtype=np.int64).reshape(self.A.dim, self.I.dim) % p
        self.surj = np.asarray(self.surj, dtype=np.int64).reshape(self.B.dim, self.A.dim) % p
        problem = self.problem()
        if problem:
            raise ValueError(f"not a short exact sequence: {problem}")

    def problem(self) -> str | None:
        p = self.ring.p
        if la.rank(self.inj, p) != self.I.dim:
            return "inj is not injective"
        if la.rank(self.surj, p) != self.B.dim:
            return "surj is not surjective"
        if not la.is_zero(self.surj @ self.inj, p):
            return "surj o inj is not zero"
        if self.I.dim + self.B.dim != self.A.dim:
            return "image of inj differs from kernel of surj"
        if not _commutes(self.inj, self.I.t, self.A.t, p):
            return "inj does not commute with t"
        if not _commutes(self.surj, self.A.t, self.B.t, p):
            return "surj does not commute with t"
        return None

    def to_record(self) -> dict:
        return {"I": self.I.to_record(), "A": self.A.to_record(),
                "B": self.B.to_record(), "inj": self.inj.tolist(),
                "surj": self.surj.tolist()}

    @classmethod
    def from_record(cls, rec: dict) -> "ShortExactSeq":
        if not isinstance(rec, dict):
            raise ValueError("sequence record must be an object")
        for key in ("I", "A", "B", "inj", "surj"):
            if key not in rec:
                raise ValueError(f"missing field '{key}'")
        mods = {}
        for key in ("I", "A", "B"):
            try:
                mods[key] = TruncModule.from_record(rec[key])
            except ValueError as exc:
                raise ValueError(f"field '{key}': {exc}") from exc
        a = mods["A"].dim
        inj = _read_matrix(rec["inj"], a, mods["I"].dim, "inj")
        surj = _read_matrix(rec["surj"], mods["B"].dim, a, "surj")
        return cls(mods["I"], mods["A"], mods["B"], inj, surj)


@dataclass
class LemmaLevel:
    i: int
    kernel_side: tuple[int, int]    # dim A_{t^i}/t^{n-i}A, dim B
    quotient_side: tuple[int, int]  # dim A/t^iA, dim B + dim t^{n-i}A
    kernel_iso: bool
    quotient_iso: bool

    @property
    def passed(self) -> bool:
        return self.kernel_iso and self.quotient_iso

    def to_record(self) -> dict:
        return {"i": self.i, "kernel_side": list(self.kernel_side),
                "quotient_side": list(self.quotient_side),
                "kernel_iso": self.kernel_iso, "quotient_iso": self.quotient_iso}


def _is_iso(f: np.ndarray, p: int) -> bool:
    return f.shape[0] == f.shape[1] and la.rank(f, p) == f.shape[0]


def lemma_hypotheses(s: ShortExactSeq) -> str | None:
    if not is_free(s.I):
        return "I is not free"
    if not is_constant(s.B):
        return "B is not constant"
    return None


def check_free_constant_lemma(s: ShortExactSeq) -> list[LemmaLevel]:
    """For I free and B constant, check both natural maps at every i."""
    why = lemma_hypotheses(s)
    if why:
        raise HypothesisViolation(why)
    A, p, n = s.A, s.ring.p, s.ring.n
    out = []
    for i in range(1, n):
        ker = la.Subquotient(A.kernel_tpow(i), A.image_tpow(n - i), p, A.dim)
        b_all = la.Subquotient(s.B.whole(), la.zeros(s.B.dim, 0), p, s.B.dim)
        f1 = la.induced_map(s.surj, ker, b_all)

        quo = la.Subquotient(A.whole(), A.image_tpow(i), p, A.dim)
        img = A.image_tpow(n - i)
        target_num = np.block([[s.B.whole(), la.zeros(s.B.dim, img.shape[1])],
                               [la.zeros(A.dim, s.B.dim), img]])
        tgt = la.Subquotient(target_num, la.zeros(s.B.dim + A.dim, 0), p,
                             s.B.dim + A.dim)
        f2 = la.induced_map(np.vstack([s.surj, A.tpow(n - i)]), quo, tgt)
        out.append(LemmaLevel(i, (ker.dim, s.B.dim), (quo.dim, tgt.dim),
                              _is_iso(f1, p), _is_iso(f2, p)))
    return out


@dataclass
class HexagonReport:
    i: int
    dims: list[int]            # h_i(Y'), h_i(Y), h_i(Y''), h_{n-i}(Y'), ...
    exact_at: list[bool]
    maps: list[np.ndarray] = field(repr=False, default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.exact_at)

    def to_record(self) -> dict:
        return {"i": self.i, "dims": self.dims, "exact_at": self.exact_at}


NODE_NAMES = ("h_i(Y')", "h_i(Y)", "h_i(Y'')",
              "h_{n-i}(Y')", "h_{n-i}(Y)", "h_{n-i}(Y'')")


def connecting_map(s: ShortExactSeq, src: HModule, dst: HModule, i: int) -> np.ndarray:
    """h_i(Y'') -> h_{n-i}(Y'): lift, apply t^i, pull back into Y'.

    Independence of the lift is checked on a spanning set: adding any
    element of Y' to a lift must not change the class of the result.
    """
    p = s.ring.p
    ti = s.A.tpow(i)
    sq = src.space
    lifts = la.solve_columns(s.surj, sq.num, p)
    pulled = la.solve_columns(s.inj, (ti @ lifts) % p, p)
    if not dst.space.contains(pulled):
        raise ArithmeticError("connecting map leaves the numerator")
    # changing a lift by inj(e_k) changes the result by t^i e_k
    shift = la.solve_columns(s.inj, (ti @ s.inj) % p, p)
    if np.any(dst.space.coords(shift)):
        raise ArithmeticError("connecting map depends on the chosen lift")
    if sq.den.shape[1]:
        d_lifts = la.solve_columns(s.surj, sq.den, p)
        d_pulled = la.solve_columns(s.inj, (ti @ d_lifts) % p, p)
        if np.any(dst.space.coords(d_pulled)):
            raise ArithmeticError("connecting map is not defined on the quotient")
    lifts = la.solve_columns(s.surj, sq.complement, p)
    pulled = la.solve_columns(s.inj, (ti @ lifts) % p, p)
    return dst.space.coords(pulled)


def _exact(f: np.ndarray, g: np.ndarray, middle: int, p: int) -> bool:
    # X -f-> M -g-> Z exact at M
    if middle == 0:
        return True
    if f.shape[1] and g.shape[0] and not la.is_zero(g @ f, p):
        return False
    return la.rank(f, p) + la.rank(g, p) == middle


def check_hexagon(s: ShortExactSeq, i: int) -> HexagonReport:
    n = s.ring.n
    if not 1 <= i <= n - 1:
        raise ValueError(f"i must lie in 1..{n - 1}, got {i}")
    j = n - i
    hi = [h_functor(m, i) for m in (s.I, s.A, s.B)]
    hj = [h_functor(m, j) for m in (s.I, s.A, s.B)]
    maps = [
        la.induced_map(s.inj, hi[0].space, hi[1].space),
        la.induced_map(s.surj, hi[1].space, hi[2].space),
        connecting_map(s, hi[2], hj[0], i),
        la.induced_map(s.inj, hj[0].space, hj[1].space),
        la.induced_map(s.surj, hj[1].space, hj[2].space),
        connecting_map(s, hj[2], hi[0], j),
    ]
    nodes = hi + hj
    dims = [h.dim for h in nodes]
    exact = [_exact(maps[k - 1], maps[k], dims[k], s.ring.p) for k in range(6)]
    return HexagonReport(i, dims, exact, maps)


def random_ses(ring: TruncRing, i_blocks, b_blocks, seed: int) -> ShortExactSeq:
    """Random extension 0 -> I -> A -> B -> 0 with prescribed I and B.

    A = I + B as a vector space with t_A = [[t_I, X], [0, t_B]]; X is drawn
    uniformly from the solutions of t_A^n = 0, then all three modules are
    conjugated by random changes of basis.
    """
    rng = np.random.default_rng(seed)
    p, n = ring.p, ring.n
    I0 = module_from_blocks(ring, i_blocks)
    B0 = module_from_blocks(ring, b_blocks)
    di, db = I0.dim, B0.dim
    # linear constraint on X: sum_{a+b=n-1} t_I^a X t_B^b = 0
    pi = [I0.tpow(a) for a in range(n)]
    pb = [B0.tpow(b) for b in range(n)]
    cons = la.zeros(di * db, di * db)
    for k in range(di * db):
        e = la.zeros(di, db)
        e.flat[k] = 1
        img = sum(pi[a] @ e @ pb[n - 1 - a] for a in range(n)) % p
        cons[:, k] = img.reshape(-1)
    ns = la.nullspace(cons, p)
    x = (ns @ rng.integers(0, p, size=ns.shape[1])) % p if ns.shape[1] else \
        np.zeros(di * db, dtype=np.int64)
    ta = np.block([[I0.t, x.reshape(di, db)], [la.zeros(db, di), B0.t]])
    P = la.random_invertible(di + db, p, rng)
    Q = la.random_invertible(di, p, rng) if di else la.zeros(0, 0)
    S = la.random_invertible(db, p, rng) if db else la.zeros(0, 0)
    Pi, Qi, Si = la.inverse(P, p), la.inverse(Q, p) if di else Q, \
        la.inverse(S, p) if db else S
    I = TruncModule(ring, Q @ I0.t @ Qi % p)
    A = TruncModule(ring, P @ ta @ Pi % p)
    B = TruncModule(ring, S @ B0.t @ Si % p)
    inj = P @ np.vstack([la.eye(di), la.zeros(db, di)]) @ Qi % p
    surj = S @ np.hstack([la.zeros(db, di), la.eye(db)]) @ Pi % p
    return ShortExactSeq(I, A, B, inj, surj)


def random_partition(total: int, n: int, rng: np.random.Generator) -> list[int]:
    out = []
    while total > 0:
        s = int(rng.integers(1, min(n, total) + 1))
        out.append(s)
        total -= s
    return out


def random_lemma_ses(ring: TruncRing, max_dim: int, seed: int) -> ShortExactSeq:
    """Random sequence with I free and B constant, dim A <= max_dim."""
    rng = np.random.default_rng(seed)
    r = int(rng.integers(0, max_dim // ring.n + 1))
    b = int(rng.integers(0, max_dim - r * ring.n + 1))
    return random_ses(ring, [ring.n] * r, [1] * b, int(rng.integers(2**31)))


def random_general_ses(ring: TruncRing, max_dim: int, seed: int) -> ShortExactSeq:
    rng = np.random.default_rng(seed)
    d = int(rng.integers(0, max_dim + 1))
    di = int(rng.integers(0, d + 1))
    return random_ses(ring, random_partition(di, ring.n, rng),
                      random_partition(d - di, ring.n, rng),
                      int(rng.integers(2**31)))


def block_multiset(blocks) -> dict[int, int]:
    return dict(sorted(Counter(blocks).items()))
