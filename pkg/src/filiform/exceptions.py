"""Exception types raised across the package."""


class FiliformError(Exception):
    """Base class for all errors raised by :mod:`filiform`."""


class InvalidField(FiliformError, ValueError):
    pass


class DivisionByZero(FiliformError, ZeroDivisionError):
    pass


class UnsupportedField(FiliformError, ValueError):
    """The operation needs a finite field (or an odd one) and got something else."""


class DimensionMismatch(FiliformError, ValueError):
    pass


class SingularMatrix(FiliformError, ValueError):
    pass


class JacobiViolation(FiliformError, ValueError):
    def __init__(self, i, j, k, value=None):
        self.triple = (i, j, k)
        self.value = value
        super().__init__(f"Jacobi identity fails on (e_{i}, e_{j}, e_{k})")


class NotAnIdeal(FiliformError, ValueError):
    pass


class NotFiliform(FiliformError, ValueError):
    pass


class NotNilpotent(FiliformError, ValueError):
    pass


class WrongCharacteristic(FiliformError, ValueError):
    pass


class UnsupportedDim(FiliformError, ValueError):
    pass


class OutOfScope(FiliformError, ValueError):
    """No closed-form criterion covers the requested parameter pattern."""


class ParseError(FiliformError, ValueError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")
