"""Exact matrix-moment algebra, scaling limits, and intersection numbers.

The package is organized around one object: the normalized vertex
correlator V(k_1..k_n) = N^{-n} <tr M^{k_1} ... tr M^{k_n}> of an N x N
Gaussian Hermitian matrix, computed three independent ways (Wick pairing
enumeration, closed-form recursions, Monte Carlo) and pushed to its
large-N and large-k limits, where the same combinatorics produces the
intersection numbers of moduli spaces of curves.
"""

from .budget import DEFAULT_PAIRING_BUDGET, pairing_budget, pairing_count
from .errors import (
    BudgetError,
    CheckFailure,
    InternalError,
    ToleranceError,
    UsageError,
)
from .series import MultiSeries, NLaurent, divide_linear, series_exp, series_log

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CheckFailure",
    "DEFAULT_PAIRING_BUDGET",
    "InternalError",
    "MultiSeries",
    "NLaurent",
    "ToleranceError",
    "UsageError",
    "divide_linear",
    "pairing_budget",
    "pairing_count",
    "series_exp",
    "series_log",
    "__version__",
]
