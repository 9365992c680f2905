"""Exception classes used across the package."""


class DeformError(Exception):
    """Base class for every error raised by dcdeform."""


class MathError(DeformError):
    """A mathematical precondition failed (CLI exit code 1)."""


class RingMismatch(MathError, ValueError):
    pass


class UnknownVariable(MathError, ValueError):
    pass


class PolynomialSyntaxError(MathError, ValueError):
    """Malformed polynomial text; ``position`` is the 0-based offset."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NegativeExponent(MathError, ValueError):
    pass


class DivideByZero(MathError, ZeroDivisionError):
    pass


class NotDivisible(MathError, ArithmeticError):
    def __init__(self, message, variable=None):
        self.variable = variable
        super().__init__(message)


class SingularMatrix(MathError, ValueError):
    pass


class ZeroInput(MathError, ValueError):
    pass


class EliminatesAllVariables(MathError, ValueError):
    pass


class NotHomogeneous(MathError, ValueError):
    pass


class NotACurve(MathError, ValueError):
    pass


class NegativeGenus(MathError, ValueError):
    pass


class JacobianNotContained(MathError):
    def __init__(self, message, locus=None):
        self.locus = locus
        super().__init__(message)


class OddEulerNumber(MathError, ValueError):
    pass


class TruncationError(MathError, ValueError):
    """A degree-truncated basis was asked about a degree beyond its bound."""


class JobParseError(DeformError):
    """Job file problem with an optional 1-based line/column location (exit 2)."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)


class BudgetExceeded(DeformError):
    """Wall-clock budget ran out (exit 3)."""
