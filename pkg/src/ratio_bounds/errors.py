"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`RatioBoundsError`; the CLI maps the "domain-like" ones to exit
status 2.
"""


class RatioBoundsError(Exception):
    """Base class for all library errors."""


class DomainError(RatioBoundsError, ValueError):
    """(n, x) lies outside the declared domain of a coefficient system."""


class ComplexRootsError(RatioBoundsError, ValueError):
    """The characteristic quadratic has no distinct real roots (oscillatory regime)."""


class RegimeError(RatioBoundsError, ValueError):
    """A bound was requested outside the regime where its theorem applies."""


class ClassError(RatioBoundsError, ValueError):
    """Solution class (minimal/dominant) incompatible with the requested bound."""


class ValidityError(RatioBoundsError, ValueError):
    """Parameters fall outside a registered validity region.

    The violated predicate is kept in ``predicate`` for reporting.
    """

    def __init__(self, message, predicate=None):
        super().__init__(message)
        self.predicate = predicate or message


class MonotonicityError(RatioBoundsError, ValueError):
    """The characteristic root is not monotonic where it needs to be."""


class DenominatorSignError(RatioBoundsError, ArithmeticError):
    """A recurrence step produced a non-positive denominator."""


class ZeroDivisorError(RatioBoundsError, ZeroDivisionError):
    """A continued-fraction denominator vanished during evaluation."""


class InconsistentBoundsError(RatioBoundsError, ArithmeticError):
    """Lower bound exceeds upper bound beyond tolerance."""


class ConditionFailedError(RatioBoundsError, ValueError):
    """A positivity condition needed for a zero bound does not hold."""

    def __init__(self, message, predicate=None):
        super().__init__(message)
        self.predicate = predicate or message


class NoConvergence(RatioBoundsError, ArithmeticError):
    """An oracle failed to stabilise to the requested number of digits."""
