"""Enumeration budgets.

Pairing enumerations grow as (K-1)!!, so every entry point that loops over
pairings checks the requested size against a budget first and raises
BudgetError instead of hanging. The default ceiling corresponds to K = 20
legs; the RMT_BUDGET environment variable (a pairing count) overrides it.
"""

import os

from .errors import BudgetError

# (20-1)!! = 654 729 075, the default hard ceiling on enumerated pairings.
DEFAULT_PAIRING_BUDGET = 654_729_075


def double_factorial(n: int) -> int:
    """n!! for odd n >= -1 (number of pairings of n+1 points)."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def pairing_count(total_legs: int) -> int:
    """Number of perfect matchings of total_legs points (0 if odd)."""
    if total_legs % 2:
        return 0
    return double_factorial(total_legs - 1)


def pairing_budget() -> int:
    """Current pairing budget: RMT_BUDGET env override, else the default."""
    raw = os.environ.get("RMT_BUDGET")
    if raw is None:
        return DEFAULT_PAIRING_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise BudgetError(f"RMT_BUDGET must be an integer, got {raw!r}")
    if value <= 0:
        raise BudgetError(f"RMT_BUDGET must be positive, got {value}")
    return value


def check_budget(total_legs: int, context: str = "enumeration") -> None:
    """Raise BudgetError if enumerating pairings of total_legs is too big."""
    need = pairing_count(total_legs)
    have = pairing_budget()
    if need > have:
        raise BudgetError(
            f"{context}: {total_legs} legs needs {need} pairings, "
            f"budget is {have} (override with RMT_BUDGET)"
        )
