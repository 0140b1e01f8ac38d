"""Exception types raised by the library.

All of them derive from :class:`MomentError`, itself a :class:`ValueError`,
so callers can catch either.
"""


class MomentError(ValueError):
    """Base class for every validation failure in this package."""


class SimplexViolation(MomentError):
    pass


class EmptyDimension(MomentError):
    pass


class BadTrialCount(MomentError):
    pass


class IndexOutOfRange(MomentError):
    pass


class BadQueryLength(MomentError):
    pass


class LengthMismatch(MomentError):
    pass


class SupportViolation(MomentError):
    pass


class BudgetExceeded(MomentError):
    """Raised when exact enumeration would visit more points than allowed."""
