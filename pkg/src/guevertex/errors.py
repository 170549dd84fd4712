"""Exception types shared across the package.

The CLI maps these onto exit codes: UsageError -> 2, BudgetError -> 3,
CheckFailure -> 4. Everything else is a genuine bug and propagates.
"""


class UsageError(ValueError):
    """Caller asked for something outside a function's contract."""


class BudgetError(RuntimeError):
    """An enumeration or sampling request exceeds the configured budget."""


class CheckFailure(AssertionError):
    """A self-test check evaluated to false."""


class ToleranceError(CheckFailure):
    """A numerical routine could not reach its accuracy target."""


class InternalError(RuntimeError):
    """An invariant the implementation guarantees was violated. A bug."""
