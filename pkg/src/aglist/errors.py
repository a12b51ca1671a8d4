"""Exception types shared across the package.

Everything raised on purpose derives from AglistError so callers (and the
CLI) can catch one base class.  Names state the violated condition; the
message carries the offending values.
"""


class AglistError(Exception):
    pass


class NonPrimeCharacteristic(AglistError):
    """Field characteristic must be prime."""


class FieldTooLarge(AglistError):
    """Field size above the table-based arithmetic cap (2**16)."""


class DivisionByZero(AglistError, ZeroDivisionError):
    """Division or inversion of the zero field element."""


class ContextMismatch(AglistError):
    """Operands belong to different field/curve contexts."""


class UnsupportedCurve(AglistError):
    """Unknown curve kind or invalid curve parameter."""


class InsufficientPrecision(AglistError):
    """A local expansion is too short for the requested reconstruction."""


class InterpolationFailure(AglistError):
    """No usable interpolation polynomial was produced.

    Base of the two backend-specific failures so callers can catch either
    with one except clause.
    """


class NoNonzeroSolution(InterpolationFailure):
    """Interpolation system has full column rank: no nonzero Q exists."""


class NoSmallElement(InterpolationFailure):
    """Reduced module basis contains no row of non-positive weighted degree."""


class InfeasibleParams(AglistError):
    """Decoder parameters violate a feasibility bound."""


class DegreeTooSmall(AglistError):
    """Divisor degree below the supported range (needs m >= 2g-1)."""


class DegreeTooLarge(AglistError):
    """Divisor degree at or above the code length."""


class BudgetExceeded(AglistError):
    """Brute-force enumeration would exceed the configured budget."""


class WeightTooLarge(AglistError):
    """Requested error weight exceeds the word length."""
