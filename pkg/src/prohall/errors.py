"""Exception hierarchy shared by every layer of the package."""


class ProHallError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class ContextMismatch(ProHallError, ValueError):
    pass


class InsufficientPrecision(ProHallError, ArithmeticError):
    pass


class PrecisionExhausted(InsufficientPrecision):
    pass


class StrictModeViolation(ProHallError, ArithmeticError):
    pass


class IntegralityFailure(ProHallError, ArithmeticError):
    pass


class BudgetExceeded(ProHallError):
    pass


class NotDistinct(ProHallError, ValueError):
    pass


class SizeCap(ProHallError):
    pass


class CapExceeded(ProHallError):
    pass


class UnboundGenerator(ProHallError, KeyError):
    def __str__(self):
        return Exception.__str__(self)
