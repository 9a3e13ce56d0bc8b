"""
Exception hierarchy for the k-bonacci toolkit.
Every error raised on purpose by the toolkit derives from KBonacciError.
"""
from typing import Optional


class KBonacciError(Exception):
    """Base class for all toolkit errors."""


class DomainError(KBonacciError, ValueError):
    """A parameter lies outside the domain of an operation."""


class RationalFormatError(DomainError):
    """A string could not be parsed as an exact rational."""


class UnsupportedFamilyError(DomainError):
    """The operation is not defined for the given oscillator family."""


class ConfigError(KBonacciError):
    """The configuration could not be loaded or is invalid."""


class CoverageError(KBonacciError):
    """A requested window is not covered by the available data."""


class SingularPointError(KBonacciError, ZeroDivisionError):
    """
    A denominator vanished at a specific level.

    Attributes:
        n (int): The level at which the denominator vanished
        expression (str): Name of the vanishing expression
    """

    def __init__(self, n: int, expression: str, message: Optional[str] = None):
        self.n = n
        self.expression = expression
        super().__init__(message or f"singular point at n={n}: {expression} = 0")
