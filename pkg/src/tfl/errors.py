"""Exception hierarchy shared by every module."""


class TflError(Exception):
    """Base class for all library errors."""


class InvalidSize(TflError, ValueError):
    """Vertex count outside what an operation supports."""


class InvalidArgument(TflError, ValueError):
    """Vertex index, parameter, or set that violates an operation's precondition."""


class SizeLimit(TflError, ValueError):
    """Input larger than a search-cost cap (enumeration, cycle covers, corpora)."""


class DecodeError(TflError, ValueError):
    """Malformed graph6 data."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(TflError):
    """A search ran out of node budget before exhausting its space.

    This is never the same thing as "no solution": callers must report it
    as inconclusive.
    """


class Cancelled(BudgetExceeded):
    """A cooperative cancellation token fired during a search."""


class ProfileUnavailable(TflError):
    """The attachment structure around a cycle cannot be formed."""
