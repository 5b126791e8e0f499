"""Exception hierarchy."""


class SublevelError(Exception):
    """Base class for all package errors."""


class DimensionError(SublevelError, ValueError):
    pass


class UnsupportedSetError(SublevelError, TypeError):
    """The set representation does not support the requested query."""


class NuComparisonError(SublevelError, TypeError):
    """An ordering query touched the symbolic value nu."""


class BisectionError(SublevelError, ArithmeticError):
    pass


class HypothesisError(SublevelError, ValueError):
    """A structural hypothesis such as (H1) or (H2) does not hold.

    ``report`` carries the :class:`~sublevel.sets.HypothesisReport` when one
    was computed.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class PreconditionError(SublevelError, ValueError):
    """Input data violates an operation's precondition (bounds, sizes...)."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ConsistencyError(SublevelError, RuntimeError):
    """An internal cross-check failed; indicates a bug or numerical breakdown."""
