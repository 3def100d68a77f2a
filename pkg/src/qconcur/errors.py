"""Exception types raised across the package."""


class QConcurError(Exception):
    """Base class for every domain error raised by qconcur."""


class ZeroState(QConcurError, ValueError):
    pass


class NotNormalized(QConcurError, ValueError):
    pass


class DimensionMismatch(QConcurError, ValueError):
    pass


class BadDimension(QConcurError, ValueError):
    pass


class CapacityExceeded(QConcurError, ValueError):
    pass


class BadSubset(QConcurError, ValueError):
    pass


class OddSubset(BadSubset):
    """Odd-size sectors are orthogonal to their conjugates; rejected unless asked for."""


class BadPermutation(QConcurError, ValueError):
    pass


class NotDensityMatrix(QConcurError, ValueError):
    pass


class NotReal(QConcurError, ValueError):
    pass


class OutOfRange(QConcurError, ValueError):
    pass


class EigensolverFailure(QConcurError, ArithmeticError):
    pass


class UnknownCode(QConcurError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown code"


class DegenerateInterpolant(QConcurError, ValueError):
    pass


class KetParseError(QConcurError, ValueError):
    """Any failure to turn text into a state. ``position`` is a character offset."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)


class KetSyntaxError(KetParseError):
    pass


class WidthMismatch(KetParseError):
    pass


class EmptyExpression(KetParseError):
    pass
