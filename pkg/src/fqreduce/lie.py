"""Orders of split groups of Lie type, |G(F_q)| = q^N * prod(q^d - 1)."""

from __future__ import annotations

import re
from dataclasses import dataclass

from sympy import factorint, isprime

from .valuation import v_ell_pow_minus_one

EXCEPTIONAL_DEGREES = {
    "G2": (2, 6),
    "F4": (2, 6, 8, 12),
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
}


@dataclass(frozen=True)
class LieTypeData:
    """Unipotent exponent N and invariant degrees of a split group."""

    label: str
    N: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        degrees = tuple(int(d) for d in self.degrees)
        if not degrees:
            raise ValueError("at least one degree is required")
        if any(d < 1 for d in degrees):
            raise ValueError(f"degrees must be positive: {degrees}")
        if list(degrees) != sorted(degrees):
            raise ValueError(f"degrees must be non-decreasing: {degrees}")
        defect = sum(d - 1 for d in degrees)
        if self.N != defect:
            raise ValueError(
                f"{self.label}: N={self.N} but sum(d_i - 1) = {defect}"
            )
        object.__setattr__(self, "degrees", degrees)

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @classmethod
    def from_record(cls, record: dict) -> "LieTypeData":
        missing = {"label", "N", "degrees"} - set(record)
        if missing:
            raise ValueError(f"descriptor is missing fields: {sorted(missing)}")
        return cls(str(record["label"]), int(record["N"]),
                   tuple(record["degrees"]))

    def to_record(self) -> dict:
        return {"label": self.label, "N": self.N, "degrees": list(self.degrees)}


def builtin_type(label: str, n: int | None = None) -> LieTypeData:
    """Look up GL(n) or one of G2, F4, E6, E7, E8.

    ``label`` may carry the GL size inline: ``"GL(3)"`` or ``"GL3"``.
    """
    key = label.strip().upper()
    m = re.fullmatch(r"GL\(?(\d+)\)?", key)
    if m:
        n = int(m.group(1))
        key = "GL"
    if key == "GL":
        if n is None or n < 1:
            raise ValueError("GL needs a size n >= 1")
        return LieTypeData(f"GL({n})", n * (n - 1) // 2, tuple(range(1, n + 1)))
    if key in EXCEPTIONAL_DEGREES:
        degrees = EXCEPTIONAL_DEGREES[key]
        return LieTypeData(key, sum(d - 1 for d in degrees), degrees)
    raise ValueError(f"unknown group type {label!r}")


def _require_prime_power(q: int) -> None:
    if q < 2 or len(factorint(q)) != 1:
        raise ValueError(f"q={q} is not a prime power")


def group_order(t: LieTypeData, q: int) -> int:
    _require_prime_power(q)
    order = q ** t.N
    for d in t.degrees:
        order *= q ** d - 1
    return order


def degree_valuations(t: LieTypeData, p: int, ell: int) -> list[int]:
    """Per-degree valuations v_ell(p^d - 1), in degree order."""
    if not isprime(p):
        raise ValueError(f"p={p} must be prime")
    if p == ell:
        raise ValueError("ell must differ from the characteristic p")
    return [v_ell_pow_minus_one(ell, p, d) for d in t.degrees]


def order_valuation(t: LieTypeData, p: int, ell: int) -> int:
    """v_ell(|G(F_p)|); the p^N part is invisible since ell != p."""
    return sum(degree_valuations(t, p, ell))
