"""Error hierarchy shared by the services, the CLI and the HTTP layer."""


class BmwSquareError(Exception):
    """Base class for every error raised by the algebra services"""


class InvalidInput(BmwSquareError):
    """Input failed validation before any computation started"""


class ParseError(InvalidInput):
    pass


class NotInLambda(InvalidInput):
    pass


class NotInGamma(InvalidInput):
    pass


class ParityViolation(InvalidInput):
    pass


class LevelTooSmall(InvalidInput):
    pass


class UnsupportedLevel(InvalidInput):
    pass


class ShapeMismatch(InvalidInput):
    pass


class OrderViolation(InvalidInput):
    pass


class InvalidOscTableau(InvalidInput):
    pass


class IndexOutOfRange(InvalidInput):
    pass


class DivisionByZero(BmwSquareError):
    """Attempt to invert the zero element of a coefficient field"""


class DenominatorVanishes(BmwSquareError):
    """A rational function has a pole at the requested specialization"""


class CapExceeded(BmwSquareError):
    """A search exceeded its configured size cap"""


class ConsistencyError(BmwSquareError):
    """An internal invariant of a construction failed"""
