"""
Exact scalars and bracket special functions.

Every scalar in the toolkit is a ``fractions.Fraction``; it is always stored
reduced with a positive denominator, so equality of values is structural.
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any, Dict, Union

from core.errors import DomainError, RationalFormatError

logger = logging.getLogger(__name__)

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RATIONAL_PATTERN = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: RationalLike) -> Fraction:
    """
    Parse the "a/b" or "a" wire format into an exact rational.

    Args:
        text (str | int | Fraction): The value to parse

    Returns:
        Fraction: The reduced rational

    Raises:
        RationalFormatError: If the text is not of the form "a" or "a/b"
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise RationalFormatError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise RationalFormatError(f"not a rational: {text!r}")

    match = _RATIONAL_PATTERN.match(text.strip())
    if not match:
        raise RationalFormatError(f"malformed rational {text!r}, expected 'a' or 'a/b'")

    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise RationalFormatError(f"zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value: RationalLike) -> str:
    """
    Serialize a rational as "a/b", or "a" when the denominator is 1.

    Args:
        value (Fraction | int): The value to format

    Returns:
        str: The wire representation
    """
    value = parse_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _require_positive(name: str, value: Fraction):
    if value <= 0:
        raise DomainError(f"{name} must be > 0, got {format_rational(value)}")


def _require_level(n: int):
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"level n must be a non-negative integer, got {n!r}")


def q_bracket(n: int, q: RationalLike) -> Fraction:
    """
    The basic q-number [n]_q = (1 - q^n)/(1 - q), equal to n at q = 1.

    Args:
        n (int): Non-negative level
        q (Fraction): Deformation parameter, q > 0

    Returns:
        Fraction: [n]_q
    """
    _require_level(n)
    q = parse_rational(q)
    _require_positive("q", q)
    if q == 1:
        return Fraction(n)
    return (1 - q ** n) / (1 - q)


def pq_bracket(n: int, p: RationalLike, q: RationalLike) -> Fraction:
    """
    The two-parameter number [n]_{p,q} = (p^n - q^n)/(p - q).

    At p = q the limit n * p^(n-1) is returned.

    Args:
        n (int): Non-negative level
        p (Fraction): First deformation parameter, p > 0
        q (Fraction): Second deformation parameter, q > 0

    Returns:
        Fraction: [n]_{p,q}
    """
    _require_level(n)
    p = parse_rational(p)
    q = parse_rational(q)
    _require_positive("p", p)
    _require_positive("q", q)
    if p == q:
        if n == 0:
            return Fraction(0)
        return n * p ** (n - 1)
    return (p ** n - q ** n) / (p - q)


def q_factorial(n: int, q: RationalLike) -> Fraction:
    """
    The q-factorial [n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1.

    Args:
        n (int): Non-negative integer
        q (Fraction): Deformation parameter, q > 0

    Returns:
        Fraction: [n]_q!
    """
    _require_level(n)
    q = parse_rational(q)
    _require_positive("q", q)
    return reduce(lambda acc, j: acc * q_bracket(j, q), range(1, n + 1), Fraction(1))


def q_binomial(k: int, m: int, q: RationalLike) -> Fraction:
    """
    The Gaussian binomial [k]!/([m]! [k-m]!); zero when m > k.

    Args:
        k (int): Non-negative upper index
        m (int): Non-negative lower index
        q (Fraction): Deformation parameter, q > 0

    Returns:
        Fraction: The q-binomial coefficient
    """
    _require_level(k)
    _require_level(m)
    q = parse_rational(q)
    _require_positive("q", q)
    if m > k:
        return Fraction(0)
    return q_factorial(k, q) / (q_factorial(m, q) * q_factorial(k - m, q))


@dataclass(frozen=True)
class BracketKind:
    """
    Base of the bracket variants: Classical, QBracket and PQBracket.

    Subclasses implement value(n) and the JSON form.
    """

    name = "abstract"

    def value(self, n: int) -> Fraction:
        raise NotImplementedError("bracket kinds must implement value()")

    def to_dict(self) -> Dict[str, str]:
        return {"bracket": self.name}

    @staticmethod
    def from_dict(data: Dict[str, Any]) -> "BracketKind":
        """
        Build a bracket kind from the StructureFunction JSON form.

        Args:
            data (dict): Mapping with "bracket" and the needed "q"/"p" keys

        Returns:
            BracketKind: The parsed bracket
        """
        name = data.get("bracket", "classical")
        if name == "classical":
            return Classical()
        if name == "q":
            if "q" not in data:
                raise DomainError("q bracket requires a 'q' value")
            return QBracket(parse_rational(data["q"]))
        if name == "pq":
            if "p" not in data or "q" not in data:
                raise DomainError("pq bracket requires 'p' and 'q' values")
            return PQBracket(parse_rational(data["p"]), parse_rational(data["q"]))
        raise DomainError(f"unknown bracket kind {name!r}")


@dataclass(frozen=True)
class Classical(BracketKind):
    """The undeformed bracket: the value at level n is n itself."""

    name = "classical"

    def value(self, n: int) -> Fraction:
        _require_level(n)
        return Fraction(n)


@dataclass(frozen=True)
class QBracket(BracketKind):
    """The q-bracket [n]_q."""

    q: Fraction = Fraction(1)
    name = "q"

    def __post_init__(self):
        object.__setattr__(self, "q", parse_rational(self.q))
        _require_positive("q", self.q)

    def value(self, n: int) -> Fraction:
        return q_bracket(n, self.q)

    def to_dict(self) -> Dict[str, str]:
        return {"bracket": self.name, "q": format_rational(self.q)}


@dataclass(frozen=True)
class PQBracket(BracketKind):
    """The p,q-bracket [n]_{p,q}."""

    p: Fraction = Fraction(1)
    q: Fraction = Fraction(1)
    name = "pq"

    def __post_init__(self):
        object.__setattr__(self, "p", parse_rational(self.p))
        object.__setattr__(self, "q", parse_rational(self.q))
        _require_positive("p", self.p)
        _require_positive("q", self.q)

    def value(self, n: int) -> Fraction:
        return pq_bracket(n, self.p, self.q)

    def to_dict(self) -> Dict[str, str]:
        return {"bracket": self.name, "q": format_rational(self.q), "p": format_rational(self.p)}

