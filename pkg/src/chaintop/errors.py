"""Exception taxonomy shared across the toolkit.

Argument misuse raises plain ValueError; the classes below mark failures
that callers are expected to catch and report (the CLI maps them to exit
codes: ParseError -> 2, ValidationError and subclasses -> 1).
"""


class ChaintopError(Exception):
    """Base class for toolkit errors."""


class ValidationError(ChaintopError):
    """A domain object violates its contract (non-monotone carrier,
    non-simplicial map, cyclic parent links, non-functorial sheaf, ...)."""


class InvariantViolation(ChaintopError):
    """An internal invariant failed (e.g. boundary-squared nonzero).

    Indicates a bug in this library, never user input; surfaced loudly.
    """


class ParseError(ChaintopError):
    """Input file does not match its schema; carries a path into the
    document when available."""

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(message if where is None else f"{where}: {message}")


class TerminationError(ChaintopError):
    """A coalgebra exceeded its declared depth bound."""


class StreamOrderError(ValidationError):
    """A block stream referenced a parent before it was emitted."""
