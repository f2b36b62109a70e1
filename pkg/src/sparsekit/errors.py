"""Exception hierarchy shared by all sparsekit modules.

Exact solvers refuse inputs above their configured size limits instead of
silently switching to heuristics, and search budgets that run out are
reported as indeterminate rather than as a negative answer. The CLI maps
each class to a distinct exit code.
"""


class SparsekitError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SparsekitError):
    """Malformed input text (carries a 1-based line number when known)."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(SparsekitError):
    """Input violates a structural invariant (self-loop, bad vertex id, ...)."""


class SizeLimitError(SparsekitError):
    """Instance exceeds the configured exact-computation limit; refused."""


class BudgetExceededError(SparsekitError):
    """A search budget ran out; the answer is indeterminate, not 'no'."""
