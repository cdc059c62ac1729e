"""
Error hierarchy for ShufflePD
Every library failure is a ShufflePDError; the CLI maps them to exit code 1
"""

from typing import Optional


class ShufflePDError(Exception):
    """Base class for all domain errors"""


class ExprError(ShufflePDError):
    """Structural misuse of expressions (e.g. ∅ as a child node)"""


class ParseError(ExprError, ValueError):
    """Concrete-syntax error, with the offending character position"""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class LexicalError(ParseError):
    """Unknown character or malformed token"""


class ExprSyntaxError(ParseError):
    """Token stream does not match the grammar"""


class UnknownSymbolError(ParseError):
    """Symbol is not part of the declared alphabet"""


class EmptyInsideError(ParseError):
    """`$` used anywhere but as the whole expression"""


class BudgetExceededError(ShufflePDError):
    """A configured resource budget would be exceeded"""

    def __init__(self, what: str, limit: int, detail: str = ""):
        self.what = what
        self.limit = limit
        message = f"{what} exceeds budget of {limit}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class OracleCapError(BudgetExceededError):
    """Bounded-language length cap or word-set guard exceeded"""


class StateBudgetError(BudgetExceededError):
    """Derivative closure grew past the state budget"""


class EnumerationGuardError(BudgetExceededError):
    """Too many expressions requested from the enumerator"""


class CoefficientGuardError(BudgetExceededError):
    """Coefficient table order beyond the configured maximum"""
