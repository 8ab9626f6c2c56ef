"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class AZError(Exception):
    """Base class for all errors raised by aztelescope."""


class ParseError(AZError, ValueError):
    """Malformed input text. ``offset`` is the 0-based position of the problem."""

    def __init__(self, message: str, offset: int, text: str = ""):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at offset {offset}")


class UnknownVariableError(AZError, KeyError):
    pass


class NotExactDivisionError(AZError, ArithmeticError):
    pass


class InconsistentSystemError(AZError, ArithmeticError):
    """Raised by ``solve_linear`` when the right-hand side is not in the column space.

    ``row`` is the index (in the reduced matrix) of the first offending ``0 = c`` row.
    """

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        super().__init__(message)


class NotHyperexponentialError(AZError, ValueError):
    """The expression is outside the supported hyperexponential class.

    ``subterm`` holds the text of the offending subexpression.
    """

    def __init__(self, message: str, subterm: str | None = None):
        self.subterm = subterm
        if subterm is not None:
            message = f"{message} (offending subterm: {subterm})"
        super().__init__(message)


class NotFoundError(AZError):
    """az_derive exhausted its search bounds. ``attempts`` lists what was tried."""

    def __init__(self, message: str, attempts: list | None = None):
        self.attempts = list(attempts or [])
        super().__init__(message)


class SingularLeadingCoefficientError(AZError, ZeroDivisionError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"leading coefficient vanishes at index {index}")


class MixedConstantTagsError(AZError, ValueError):
    pass


class NonIntegralStepError(AZError, ArithmeticError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"recurrence step to index {index} is not integral")


class PrecisionError(AZError):
    """A certified comparison could not be decided at the requested precision."""


class NonConvergenceError(AZError):
    pass


class PoleError(AZError, ZeroDivisionError):
    pass
