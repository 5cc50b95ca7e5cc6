"""Exception types shared across the package."""


class GraphError(ValueError):
    """Invalid graph construction input (bad vertex, self-loop, bad count)."""


class FormatError(ValueError):
    """Malformed graph or decomposition file; message carries the line number."""


class DecompositionError(ValueError):
    """A tree decomposition handed to an operation failed its precondition."""


class BudgetExceeded(RuntimeError):
    """An exact search ran out of its node budget.

    Raised instead of returning a partial or wrong answer.  The budget is
    configurable per call and through the TINKIT_BUDGET environment variable.
    """


class InternalError(RuntimeError):
    """A construction that is guaranteed to succeed failed.

    This always indicates a bug in the library, never a property of the
    input, and is therefore kept distinct from the certifying outcomes.
    """
