"""Dense linear algebra over F_p on int64 numpy arrays.

Vectors are columns; a linear map V -> W is a (dim W, dim V) matrix.  Every
basis returned here comes from Gauss-Jordan elimination with the first
nonzero entry as pivot, so results are deterministic.
"""

from __future__ import annotations

import numpy as np


def mat(rows, p: int, shape=None) -> np.ndarray:
    a = np.array(rows, dtype=np.int64) % p
    if shape is not None:
        a = a.reshape(shape)
    return a


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def matpow(a: np.ndarray, e: int, p: int) -> np.ndarray:
    out = eye(a.shape[0])
    for _ in range(e):
        out = (out @ a) % p
    return out


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def nullspace(m: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : m x = 0} as columns."""
    cols = m.shape[1]
    if m.shape[0] == 0:
        return eye(cols)
    r, piv = rref(m, p)
    free = [c for c in range(cols) if c not in piv]
    basis = zeros(cols, len(free))
    for k, f in enumerate(free):
        basis[f, k] = 1
        for i, pc in enumerate(piv):
            basis[pc, k] = (-r[i, f]) % p
    return basis


def colspace(m: np.ndarray, p: int) -> np.ndarray:
    """Independent subset of the columns of m spanning its image."""
    if m.shape[1] == 0 or m.shape[0] == 0:
        return zeros(m.shape[0], 0)
    _, piv = rref(m, p)
    return m[:, piv] % p


def solve(m: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some x with m x = b (free coordinates 0), or None."""
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return np.zeros(cols, dtype=np.int64)
    r, piv = rref(np.hstack([m % p, b[:, None] % p]), p)
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = r[i, -1]
    return x


def solve_many(m: np.ndarray, bs: np.ndarray, p: int):
    """Solve m X = bs column by column in one elimination.

    Returns (X, ok) where ok[k] says whether column k is consistent; the
    corresponding column of X is meaningful only when it is.
    """
    rows, cols = m.shape
    k = bs.shape[1]
    if rows == 0:
        return zeros(cols, k), np.ones(k, dtype=bool)
    r, piv = rref(np.hstack([m % p, bs % p]), p)
    rk = sum(1 for c in piv if c < cols)
    ok = ~np.any(r[rk:, cols:], axis=0)
    x = zeros(cols, k)
    for i in range(rk):
        x[piv[i]] = r[i, cols:]
    return x, ok


def solve_columns(m: np.ndarray, bs: np.ndarray, p: int) -> np.ndarray:
    """Column-wise solve; raises if some column is not in the image."""
    x, ok = solve_many(m, bs, p)
    if not ok.all():
        raise ValueError("vector is not in the column space")
    return x


def span_contains(basis: np.ndarray, vs: np.ndarray, p: int) -> bool:
    """True when every column of vs lies in the span of basis."""
    if vs.shape[1] == 0 or is_zero(vs, p):
        return True
    if basis.shape[1] == 0:
        return False
    return bool(solve_many(basis, vs, p)[1].all())


def in_span(basis: np.ndarray, v: np.ndarray, p: int) -> bool:
    return span_contains(basis, np.asarray(v, dtype=np.int64).reshape(-1, 1), p)


def is_zero(m: np.ndarray, p: int) -> bool:
    return not np.any(np.asarray(m) % p)


def random_invertible(n: int, p: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        m = rng.integers(0, p, size=(n, n), dtype=np.int64)
        if rank(m, p) == n:
            return m


def inverse(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    r, piv = rref(np.hstack([m % p, eye(n)]), p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return r[:, n:]


def as_columns(a, dim: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.ndim == 2 and a.shape[0] == dim:
        return a
    if dim == 0:
        return zeros(0, a.shape[1] if a.ndim == 2 else 0)
    return a.reshape(dim, -1)


class Subquotient:
    """U / W for subspaces W <= U of F_p^d, with an explicit basis.

    The basis of U is adapted: a basis of W first, then complement vectors
    taken from U's columns; the complement is the quotient basis.
    """

    def __init__(self, num: np.ndarray, den: np.ndarray, p: int, dim: int):
        self.p, self.ambient = p, dim
        num = as_columns(num, dim) % p
        den = colspace(as_columns(den, dim) % p, p)
        if not span_contains(num, den, p):
            raise ValueError("denominator is not contained in the numerator")
        self.num, self.den = num, den
        self.adapted = colspace(np.hstack([den, num]), p)
        self.complement = self.adapted[:, den.shape[1]:]

    @property
    def dim(self) -> int:
        return self.complement.shape[1]

    def contains(self, vs: np.ndarray) -> bool:
        return span_contains(self.num, as_columns(vs, self.ambient), self.p)

    def coords(self, vs: np.ndarray) -> np.ndarray:
        """Quotient coordinates of the columns of vs (each in the numerator)."""
        vs = as_columns(vs, self.ambient)
        if self.adapted.shape[1] == 0:
            if not is_zero(vs, self.p):
                raise ValueError("vector is not in the numerator subspace")
            return zeros(0, vs.shape[1])
        x, ok = solve_many(self.adapted, vs, self.p)
        if not ok.all():
            raise ValueError("vector is not in the numerator subspace")
        return x[self.den.shape[1]:]

    def lift(self, c: np.ndarray) -> np.ndarray:
        return (self.complement @ np.asarray(c, dtype=np.int64)) % self.p


def induced_map(f: np.ndarray, src: Subquotient, dst: Subquotient) -> np.ndarray:
    """Matrix of the map src -> dst induced by the ambient map f.

    Checks that f sends numerator into numerator and denominator into
    denominator, i.e. that the induced map is well defined.
    """
    p = src.p
    if not dst.contains((f @ src.num) % p):
        raise ValueError("map does not preserve the numerator")
    if np.any(dst.coords((f @ src.den) % p)):
        raise ValueError("map does not preserve the denominator")
    return dst.coords((f @ src.complement) % p)
