"""Finite fields F_{p^k} and polynomial maps on F_q^n.

Elements are ints 0..q-1 whose base-p digits are the coordinates over F_p
(lowest digit = constant term), so F_p sits inside every F_{p^k} as 0..p-1.
Multiplication goes through discrete log/exp tables; enumeration over F_q^n
is vectorised with numpy and split into contiguous index ranges.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np
from sympy import factorint, isprime

from . import DEFAULT_BUDGET, BudgetExceeded

CHUNK = 1 << 16


# -- polynomials over F_p as coefficient lists, low degree first ------------

def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmod(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    f = _trim([c % p for c in f])
    g = _trim([c % p for c in g])
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        shift = len(f) - len(g)
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gc) % p
        _trim(f)
    return f


def _pmul(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def _psub(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return _trim([(a - b) % p for a, b in zip(f, g)])


def _ppowmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result, base = [1], _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def _pgcd(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    f, g = _trim([c % p for c in f]), _trim([c % p for c in g])
    while g:
        f, g = g, _pmod(f, g, p)
    return f


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a polynomial over F_p (coefficients low first)."""
    f = _trim([c % p for c in f])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p ** k, f, p), x, p):
        return False
    for r in factorint(k):
        h = _psub(_ppowmod(x, p ** (k // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def _is_primitive(f: Sequence[int], p: int) -> bool:
    k = len(f) - 1
    order = p ** k - 1
    for r in factorint(order):
        if _ppowmod([0, 1], order // r, f, p) == [1]:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic primitive polynomial of degree k over F_p.

    Candidates are ordered by their coefficient vector read as a base-p
    number, constant term least significant.
    """
    for code in range(p ** k):
        tail = [(code // p ** i) % p for i in range(k)]
        f = tail + [1]
        if tail[0] and is_irreducible(f, p) and _is_primitive(f, p):
            return tuple(f)
    raise AssertionError(f"no primitive polynomial of degree {k} over F_{p}")


class FqContext:
    """The field F_q, q = p^k, with vectorised arithmetic on element codes."""

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not isprime(p):
            raise ValueError(f"p={p} is not prime")
        if k < 1:
            raise ValueError("extension degree k must be >= 1")
        self.p, self.k, self.q = p, k, p ** k
        if k == 1:
            modulus = (0, 1)
        elif modulus is None:
            modulus = default_modulus(p, k)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}")
        if k > 1 and not is_irreducible(modulus, p):
            raise ValueError(f"modulus {list(modulus)} is reducible over F_{p}")
        self.modulus = modulus
        self._build_tables()

    def __repr__(self):
        if self.k == 1:
            return f"FqContext(p={self.p})"
        return f"FqContext(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (isinstance(other, FqContext) and self.p == other.p
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    # -- encoding ----------------------------------------------------------

    def encode(self, coords: Sequence[int]) -> int:
        coords = list(coords)
        if len(coords) > self.k:
            raise ValueError(f"element has {len(coords)} coordinates, k={self.k}")
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coords))

    def decode(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p ** i) % self.p for i in range(self.k))

    def element(self, value) -> int:
        """Element code from an int (prime-subfield element) or coordinates."""
        if isinstance(value, (list, tuple)):
            return self.encode(value)
        return int(value) % self.p

    # -- tables ------------------------------------------------------------

    def _poly_of(self, a: int) -> list[int]:
        return _trim(list(self.decode(a)))

    def _code_of(self, f: Sequence[int]) -> int:
        return self.encode(list(f) + [0] * (self.k - len(f)))

    def _build_tables(self):
        q, p = self.q, self.p
        if self.k == 1:
            gen = _primitive_root(p)
        else:
            gen = self._find_generator()
        exp = np.zeros(max(q - 1, 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        if self.k == 1:
            x = 1
            for i in range(q - 1):
                exp[i] = x
                log[x] = i
                x = x * gen % p
        else:
            g = self._poly_of(gen)
            x = [1]
            for i in range(q - 1):
                code = self._code_of(x)
                exp[i] = code
                log[code] = i
                x = _pmod(_pmul(x, g, p), self.modulus, p)
        self.generator = gen
        self.exp, self.log = exp, log

    def _find_generator(self) -> int:
        order = self.q - 1
        primes = list(factorint(order))
        for a in range(2, self.q):
            f = self._poly_of(a)
            if all(_ppowmod(f, order // r, self.modulus, self.p) != [1]
                   for r in primes):
                return a
        raise AssertionError("multiplicative group has no generator")

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.vadd(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        return int(self.vneg(np.int64(a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0
        return int(self.exp[(self.log[a] * e) % (self.q - 1)])

    # -- vectorised arithmetic --------------------------------------------

    def vadd(self, a, b):
        p = self.p
        if self.k == 1:
            return (a + b) % p
        out = np.zeros_like(np.asarray(a + b))
        pw = 1
        for _ in range(self.k):
            out = out + (((a // pw) + (b // pw)) % p) * pw
            pw *= p
        return out

    def vneg(self, a):
        p = self.p
        if self.k == 1:
            return (-a) % p
        out = np.zeros_like(np.asarray(a))
        pw = 1
        for _ in range(self.k):
            out = out + ((-(a // pw)) % p) * pw
            pw *= p
        return out

    def vmul(self, a, b):
        prod = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, prod)

    def vpow(self, a, e: int):
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, self.exp[(self.log[a] * e) % (self.q - 1)])

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    # -- extensions --------------------------------------------------------

    def extension(self, m: int) -> tuple["FqContext", np.ndarray]:
        """F_{q^m} together with the embedding table F_q -> F_{q^m}."""
        if m == 1:
            return self, np.arange(self.q, dtype=np.int64)
        ext = get_field(self.p, self.k * m)
        if self.k == 1:
            return ext, np.arange(self.p, dtype=np.int64)
        xs = ext.elements()
        val = np.zeros_like(xs)
        for c in reversed(self.modulus):
            val = ext.vadd(ext.vmul(val, xs), np.full_like(xs, c))
        root = int(xs[val == 0][0])
        table = np.zeros(self.q, dtype=np.int64)
        for a in range(self.q):
            acc = 0
            for i, c in enumerate(self.decode(a)):
                if c:
                    acc = ext.add(acc, ext.mul(c, ext.pow(root, i)))
            table[a] = acc
        return ext, table


@lru_cache(maxsize=64)
def get_field(p: int, k: int = 1) -> FqContext:
    """Shared F_{p^k} with the default modulus (contexts are immutable)."""
    return FqContext(p, k)


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    primes = list(factorint(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in primes):
            return g
    raise AssertionError


# -- points of F_q^n ----------------------------------------------------------

def check_budget(count: int, budget: int | None) -> None:
    budget = DEFAULT_BUDGET if budget is None else budget
    if count > budget:
        raise BudgetExceeded(f"{count} points exceed the enumeration budget {budget}")


def point_chunks(total: int, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    for start in range(0, total, chunk):
        yield np.arange(start, min(total, start + chunk), dtype=np.int64)


def decode_points(ctx: FqContext, idx: np.ndarray, n: int) -> np.ndarray:
    """Point indices -> (len, n) array of coordinates; index = sum x_j q^j."""
    cols = [(idx // ctx.q ** j) % ctx.q for j in range(n)]
    return np.stack(cols, axis=1) if cols else np.zeros((len(idx), 0), np.int64)


def encode_points(ctx: FqContext, pts: np.ndarray) -> np.ndarray:
    idx = np.zeros(pts.shape[0], dtype=np.int64)
    for j in range(pts.shape[1] - 1, -1, -1):
        idx = idx * ctx.q + pts[:, j]
    return idx


def point_tuple(ctx: FqContext, idx: int, n: int):
    """Human/JSON form of one point: ints for prime fields, coordinate lists
    otherwise."""
    coords = [(idx // ctx.q ** j) % ctx.q for j in range(n)]
    if ctx.k == 1:
        return coords
    return [list(ctx.decode(c)) for c in coords]


Term = tuple[int, tuple[int, ...]]


def normalize_terms(ctx: FqContext, terms: Iterable[tuple[int, Sequence[int]]],
                    n: int) -> tuple[Term, ...]:
    """Merge equal monomials and drop zero coefficients (codes already in ctx)."""
    merged: dict[tuple[int, ...], int] = {}
    for coeff, exps in terms:
        exps = tuple(int(e) for e in exps)
        if len(exps) != n:
            raise ValueError(f"exponent vector {list(exps)} has length != {n}")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {list(exps)}")
        merged[exps] = ctx.add(merged.get(exps, 0), coeff)
    return tuple((c, e) for e, c in sorted(merged.items()) if c)


def eval_terms(ctx: FqContext, terms: Sequence[Term], pts: np.ndarray) -> np.ndarray:
    """Evaluate sum c * x^e at every row of ``pts``."""
    acc = np.zeros(pts.shape[0], dtype=np.int64)
    qm1 = ctx.q - 1
    logs = ctx.log[pts]
    for coeff, exps in terms:
        total = np.full(pts.shape[0], ctx.log[coeff], dtype=np.int64)
        dead = np.zeros(pts.shape[0], dtype=bool)
        for j, e in enumerate(exps):
            if e:
                total += logs[:, j] * e
                dead |= pts[:, j] == 0
        val = np.where(dead, 0, ctx.exp[total % qm1])
        acc = ctx.vadd(acc, val)
    return acc


class PolynomialMap:
    """n polynomials in n variables over F_q, i.e. a self-map of F_q^n."""

    def __init__(self, ctx: FqContext, n: int, components):
        if len(components) != n:
            raise ValueError(f"expected {n} components, got {len(components)}")
        self.ctx, self.n = ctx, n
        self.components = tuple(normalize_terms(ctx, comp, n)
                                for comp in components)

    @classmethod
    def from_record(cls, ctx: FqContext, n: int, comps) -> "PolynomialMap":
        parsed = []
        for ci, comp in enumerate(comps):
            terms = []
            for ti, term in enumerate(comp):
                if not (isinstance(term, (list, tuple)) and len(term) == 2):
                    raise ValueError(
                        f"component {ci}, term {ti}: expected [coeff, [e...]]")
                coeff, exps = term
                terms.append((ctx.element(coeff), exps))
            parsed.append(terms)
        return cls(ctx, n, parsed)

    def to_record(self) -> list:
        def coeff(c):
            return c if self.ctx.k == 1 else list(self.ctx.decode(c))
        return [[[coeff(c), list(e)] for c, e in comp] for comp in self.components]

    def degree(self) -> int:
        return max((sum(e) for comp in self.components for _, e in comp),
                   default=0)

    def evaluate(self, pts: np.ndarray) -> np.ndarray:
        cols = [eval_terms(self.ctx, comp, pts) for comp in self.components]
        return np.stack(cols, axis=1) if cols else pts.copy()

    def apply(self, idx: np.ndarray) -> np.ndarray:
        """Image point indices of the given point indices."""
        pts = decode_points(self.ctx, idx, self.n)
        return encode_points(self.ctx, self.evaluate(pts))

    def base_change(self, ext: FqContext, embed: np.ndarray) -> "PolynomialMap":
        comps = [[(int(embed[c]), e) for c, e in comp] for comp in self.components]
        return PolynomialMap(ext, self.n, comps)

    def __repr__(self):
        return f"PolynomialMap(n={self.n}, {self.to_record()})"


def all_points(ctx: FqContext, n: int) -> Iterator[tuple[int, ...]]:
    """Plain-Python point iterator in index order (test oracle use)."""
    for rev in product(range(ctx.q), repeat=n):
        yield tuple(reversed(rev))
