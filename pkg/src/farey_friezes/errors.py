"""Typed errors raised across the package.

Every error derives from :class:`FareyError` so callers (and the CLI) can
separate domain failures from programming errors.
"""


class FareyError(Exception):
    """Base class for all domain errors."""


# rings
class InvalidDescriptor(FareyError, ValueError):
    pass


class NotAUnit(FareyError, ArithmeticError):
    pass


class NonUnitGenerator(FareyError, ValueError):
    pass


class InfiniteRingError(FareyError, TypeError):
    """A finite-only operation was asked of the integer ring."""


class RingTooLarge(FareyError):
    pass


# complexes
class DisconnectedComplex(FareyError):
    pass


class FacesUndefined(FareyError):
    pass


class UnsupportedFormat(FareyError, ValueError):
    pass


class NotAnEdge(FareyError, ValueError):
    pass


# paths
class PathTooShort(FareyError, ValueError):
    pass


class NotAPath(FareyError, ValueError):
    pass


class InvalidInitialLift(FareyError, ValueError):
    pass


class NotEquivalentEndpoints(FareyError, ValueError):
    pass


# friezes and tilings
class WindowTooSmall(FareyError, ValueError):
    pass


class NotTame(FareyError, ValueError):
    pass


class NotAFrieze(FareyError, ValueError):
    pass


class NotAField(FareyError, ValueError):
    pass


class BudgetExceeded(FareyError):
    pass


# lifting
class NotClosed(FareyError, ValueError):
    pass


class NotContractible(FareyError, ValueError):
    pass


class NotSemiregular(FareyError, ValueError):
    pass
