"""Exception types shared across the package."""


class RLSuperError(Exception):
    pass


class DivisionByZero(RLSuperError, ZeroDivisionError):
    pass


class DimensionMismatch(RLSuperError, ValueError):
    pass


class NotContained(RLSuperError, ValueError):
    pass


class ParityError(RLSuperError, ValueError):
    pass


class NotAnIdeal(RLSuperError, ValueError):
    pass


class NotHomogeneous(RLSuperError, ValueError):
    pass


class ExhaustionUnavailable(RLSuperError, ValueError):
    pass


class BudgetExceeded(RLSuperError, RuntimeError):
    pass


class InvalidParameter(RLSuperError, ValueError):
    pass


class InvalidM(RLSuperError, ValueError):
    pass


class ParseError(RLSuperError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class GradingError(ParseError):
    pass


class UnknownName(ParseError):
    pass
