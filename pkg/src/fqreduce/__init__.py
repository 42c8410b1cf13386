"""Finite-field reduction toolkit: Minkowski-type bounds, fixed-point
congruences over F_q, Nullstellensatz certificates and Smith-theory
module algebra over truncated polynomial rings."""

__version__ = "0.1.0"


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed the configured point budget."""


DEFAULT_BUDGET = 2 ** 24
