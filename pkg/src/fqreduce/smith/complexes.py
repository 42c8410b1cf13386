"""Bounded cochain complexes of R-modules and the vanishing-transfer checks."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .modules import (ShortExactSeq, TruncModule, TruncRing, _read_matrix,
                      is_constant, is_free)


class CochainComplex:
    """E^0 -> E^1 -> ... -> E^L with t-equivariant differentials; zero elsewhere."""

    def __init__(self, ring: TruncRing, terms: list[TruncModule], diffs):
        self.ring = ring
        self.terms = list(terms)
        if any(m.ring != ring for m in self.terms):
            raise ValueError("terms live over different rings")
        if len(diffs) != max(len(self.terms) - 1, 0):
            raise ValueError("need exactly one differential between consecutive terms")
        p = ring.p
        self.d = []
        for j, raw in enumerate(diffs):
            src, dst = self.terms[j], self.terms[j + 1]
            dj = la.as_columns(raw, dst.dim) % p
            if dj.shape != (dst.dim, src.dim):
                raise ValueError(f"d^{j} has shape {dj.shape}, expected {(dst.dim, src.dim)}")
            if not la.is_zero(dj @ src.t - dst.t @ dj, p):
                raise ValueError(f"d^{j} does not commute with t")
            self.d.append(dj)
        for j in range(len(self.d) - 1):
            if not la.is_zero(self.d[j + 1] @ self.d[j], p):
                raise ValueError(f"d^{j + 1} o d^{j} is not zero")

    @property
    def length(self) -> int:
        return len(self.terms)

    def term(self, j: int) -> TruncModule | None:
        return self.terms[j] if 0 <= j < len(self.terms) else None

    def dim(self, j: int) -> int:
        m = self.term(j)
        return m.dim if m is not None else 0

    def diff(self, j: int) -> np.ndarray:
        """d^j : E^j -> E^{j+1}, zero outside the stored range."""
        if 0 <= j < len(self.d):
            return self.d[j]
        return la.zeros(self.dim(j + 1), self.dim(j))

    def to_record(self) -> dict:
        return {"p": self.ring.p, "n": self.ring.n,
                "terms": [m.t.tolist() for m in self.terms],
                "dims": [m.dim for m in self.terms],
                "d": [dj.tolist() for dj in self.d]}

    @classmethod
    def from_record(cls, rec: dict) -> "CochainComplex":
        if not isinstance(rec, dict):
            raise ValueError("complex record must be an object")
        for key in ("p", "n", "dims", "terms", "d"):
            if key not in rec:
                raise ValueError(f"missing field '{key}'")
        ring = TruncRing(int(rec["p"]), int(rec["n"]))
        dims = [int(x) for x in rec["dims"]]
        if len(rec["terms"]) != len(dims):
            raise ValueError("field 'terms': length differs from 'dims'")
        terms = [TruncModule(ring, _read_matrix(t, d, d, f"terms[{j}]"))
                 for j, (t, d) in enumerate(zip(rec["terms"], dims))]
        if len(rec["d"]) != max(len(dims) - 1, 0):
            raise ValueError("field 'd': wrong number of differentials")
        diffs = [_read_matrix(x, dims[j + 1], dims[j], f"d[{j}]")
                 for j, x in enumerate(rec["d"])]
        return cls(ring, terms, diffs)


@dataclass
class Cohomology:
    j: int
    space: la.Subquotient
    module: TruncModule

    @property
    def dim(self) -> int:
        return self.space.dim


def cohomology(c: CochainComplex, j: int) -> Cohomology:
    """ker d^j / im d^{j-1} with the inherited t-action."""
    if j < 0:
        raise ValueError("degree must be >= 0")
    d_in = c.dim(j)
    ker = la.nullspace(c.diff(j), c.ring.p) if d_in else la.zeros(0, 0)
    img = la.colspace(c.diff(j - 1), c.ring.p)
    sq = la.Subquotient(ker, img, c.ring.p, d_in)
    t = c.term(j).t if c.term(j) is not None else la.zeros(0, 0)
    return Cohomology(j, sq, TruncModule(c.ring, la.induced_map(t, sq, sq)))


def subcomplex(c: CochainComplex, bases: list[np.ndarray]) -> CochainComplex:
    """Restriction of c to t-stable, d-stable subspaces given by column bases."""
    p = c.ring.p
    terms, diffs = [], []
    for j, b in enumerate(bases):
        m = c.terms[j]
        terms.append(TruncModule(c.ring, la.solve_columns(b, (m.t @ b) % p, p)))
        if j + 1 < len(bases):
            diffs.append(la.solve_columns(bases[j + 1], (c.d[j] @ b) % p, p))
    return CochainComplex(c.ring, terms, diffs)


def image_subcomplex(c: CochainComplex, i: int) -> CochainComplex:
    """t^i A, degreewise."""
    return subcomplex(c, [m.image_tpow(i) for m in c.terms])


def kernel_subcomplex(c: CochainComplex, i: int) -> CochainComplex:
    """A_{t^i}, degreewise."""
    return subcomplex(c, [m.kernel_tpow(i) for m in c.terms])


def vanishes_from(c: CochainComplex, start: int) -> list[int]:
    """Degrees j >= start with H^j(c) != 0."""
    return [j for j in range(max(start, 0), c.length + 1)
            if cohomology(c, j).dim]


@dataclass
class ComplexSES:
    I: CochainComplex
    A: CochainComplex
    B: CochainComplex
    inj: list[np.ndarray]
    surj: list[np.ndarray]
    levels: list[ShortExactSeq] = field(init=False, repr=False)

    def __post_init__(self):
        ring = self.A.ring
        if not (self.I.ring == ring == self.B.ring):
            raise ValueError("complexes live over different rings")
        L = self.A.length
        if not (self.I.length == L == self.B.length):
            raise ValueError("complexes have different lengths")
        if len(self.inj) != L or len(self.surj) != L:
            raise ValueError("need one inj and one surj per degree")
        p = ring.p
        self.levels = []
        for j in range(L):
            try:
                self.levels.append(ShortExactSeq(self.I.terms[j], self.A.terms[j],
                                                 self.B.terms[j], self.inj[j], self.surj[j]))
            except ValueError as exc:
                raise ValueError(f"degree {j}: {exc}") from exc
        self.inj = [s.inj for s in self.levels]
        self.surj = [s.surj for s in self.levels]
        for j in range(L - 1):
            if not la.is_zero(self.A.d[j] @ self.inj[j] - self.inj[j + 1] @ self.I.d[j], p):
                raise ValueError(f"inj is not a chain map in degree {j}")
            if not la.is_zero(self.B.d[j] @ self.surj[j] - self.surj[j + 1] @ self.A.d[j], p):
                raise ValueError(f"surj is not a chain map in degree {j}")

    @property
    def ring(self) -> TruncRing:
        return self.A.ring

    def to_record(self) -> dict:
        return {"I": self.I.to_record(), "A": self.A.to_record(),
                "B": self.B.to_record(),
                "inj": [m.tolist() for m in self.inj],
                "surj": [m.tolist() for m in self.surj]}

    @classmethod
    def from_record(cls, rec: dict) -> "ComplexSES":
        if not isinstance(rec, dict):
            raise ValueError("record must be an object")
        for key in ("I", "A", "B", "inj", "surj"):
            if key not in rec:
                raise ValueError(f"missing field '{key}'")
        cx = {}
        for key in ("I", "A", "B"):
            try:
                cx[key] = CochainComplex.from_record(rec[key])
            except ValueError as exc:
                raise ValueError(f"field '{key}': {exc}") from exc
        L = cx["A"].length
        if len(rec["inj"]) != L or len(rec["surj"]) != L:
            raise ValueError("fields 'inj'/'surj': need one matrix per degree")
        inj = [_read_matrix(m, cx["A"].dim(j), cx["I"].dim(j), f"inj[{j}]")
               for j, m in enumerate(rec["inj"])]
        surj = [_read_matrix(m, cx["B"].dim(j), cx["A"].dim(j), f"surj[{j}]")
                for j, m in enumerate(rec["surj"])]
        return cls(cx["I"], cx["A"], cx["B"], inj, surj)


def _level_hypotheses(cs: ComplexSES) -> str | None:
    for j, s in enumerate(cs.levels):
        if not is_free(s.I):
            return f"I^{j} is not free"
        if not is_constant(s.B):
            return f"B^{j} is not constant"
    return None


@dataclass
class TransferReport:
    N: int
    applicable: bool
    reason: str | None = None
    nonzero_B: list[int] = field(default_factory=list)
    nonzero_image: dict[int, list[int]] = field(default_factory=dict)
    nonzero_kernel: dict[int, list[int]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.applicable and not (
            self.nonzero_B or any(self.nonzero_image.values())
            or any(self.nonzero_kernel.values()))

    def to_record(self) -> dict:
        return {"N": self.N, "applicable": self.applicable, "reason": self.reason,
                "passed": self.passed, "nonzero_B": self.nonzero_B,
                "nonzero_image": {str(k): v for k, v in self.nonzero_image.items()},
                "nonzero_kernel": {str(k): v for k, v in self.nonzero_kernel.items()}}


def check_vanishing_transfer(cs: ComplexSES, N: int) -> TransferReport:
    """If H^j(A) = 0 for j >= N, check H^j(B), H^j(t^iA), H^j(A_{t^i}) vanish too."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    why = _level_hypotheses(cs)
    if why is None:
        bad = vanishes_from(cs.A, N)
        if bad:
            why = f"H^{bad[0]}(A) is not zero"
    if why:
        return TransferReport(N, False, why)
    rep = TransferReport(N, True)
    rep.nonzero_B = vanishes_from(cs.B, N)
    for i in range(1, cs.ring.n):
        rep.nonzero_image[i] = vanishes_from(image_subcomplex(cs.A, i), N)
        rep.nonzero_kernel[i] = vanishes_from(kernel_subcomplex(cs.A, i), N)
    return rep


@dataclass
class H0Report:
    applicable: bool
    reason: str | None = None
    transfer: TransferReport | None = None
    h0_dims: tuple[int, int] = (0, 0)
    h0_B_constant: bool = False
    iso: bool = False

    @property
    def passed(self) -> bool:
        return (self.applicable and self.transfer is not None
                and not self.transfer.nonzero_B and self.h0_B_constant and self.iso)

    def to_record(self) -> dict:
        return {"applicable": self.applicable, "reason": self.reason,
                "passed": self.passed, "h0_dims": list(self.h0_dims),
                "h0_B_constant": self.h0_B_constant, "iso": self.iso,
                "transfer": self.transfer.to_record() if self.transfer else None}


def check_h0_transfer(cs: ComplexSES) -> H0Report:
    """Higher vanishing plus constant H^0(A) gives H^0(A) ~ H^0(B)."""
    tr = check_vanishing_transfer(cs, 1)
    if not tr.applicable:
        return H0Report(False, tr.reason)
    hA, hB = cohomology(cs.A, 0), cohomology(cs.B, 0)
    if not is_constant(hA.module):
        return H0Report(False, "t does not act as zero on H^0(A)")
    if cs.A.length == 0:
        f = la.zeros(0, 0)
    else:
        f = la.induced_map(cs.surj[0], hA.space, hB.space)
    p = cs.ring.p
    iso = f.shape[0] == f.shape[1] and la.rank(f, p) == f.shape[0]
    return H0Report(True, None, tr, (hA.dim, hB.dim), is_constant(hB.module), iso)
