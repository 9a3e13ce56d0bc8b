"""
Recurrence and verification report entities.

A Recurrence of order k states s_{n+1} = sum_i lambda_i s_{n-i} for
i = 0..k-1; it is always read as applying to one spectrum sequence.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging

from core.errors import DomainError
from core.numbers import RationalLike, format_rational, parse_rational
from entities.base_entity import BaseEntity
from entities.structure_function import SequenceKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Recurrence(BaseEntity):
    """
    Constant-coefficient linear recurrence.

    Attributes:
        order (int): Number of terms k
        coefficients (tuple): lambda_0..lambda_{k-1}
        applied_to (SequenceKind, optional): The sequence the relation was
            found on or is meant for; not part of equality
    """

    order: int
    coefficients: Tuple[Fraction, ...]
    applied_to: Optional[SequenceKind] = field(default=None, compare=False)

    def __post_init__(self):
        if isinstance(self.order, bool) or not isinstance(self.order, int) or self.order < 1:
            raise DomainError(f"recurrence order must be a positive integer, got {self.order!r}")
        coefficients = tuple(parse_rational(value) for value in self.coefficients)
        if len(coefficients) != self.order:
            raise DomainError(
                f"order {self.order} recurrence needs {self.order} coefficients, got {len(coefficients)}")
        object.__setattr__(self, "coefficients", coefficients)

    @classmethod
    def of(cls, coefficients: Sequence[RationalLike],
           applied_to: Optional[SequenceKind] = None) -> "Recurrence":
        """Build a recurrence whose order is the number of coefficients."""
        values = tuple(parse_rational(value) for value in coefficients)
        return cls(len(values), values, applied_to)

    def applied(self, kind: SequenceKind) -> "Recurrence":
        """Copy of this recurrence tagged with the sequence it applies to."""
        return Recurrence(self.order, self.coefficients, kind)

    def residual(self, values: Sequence[Fraction], n: int) -> Fraction:
        """
        Residual s_{n+1} - sum_i lambda_i s_{n-i} on a list of sequence values.

        Args:
            values (list): s_0, s_1, ... covering indices n-k+1..n+1
            n (int): The level, n >= order - 1

        Returns:
            Fraction: The exact residual
        """
        total = values[n + 1]
        for i, coefficient in enumerate(self.coefficients):
            total -= coefficient * values[n - i]
        return total

    def characteristic_polynomial(self) -> List[Fraction]:
        """
        Monic characteristic polynomial, highest degree first.

        Returns:
            list: [1, -lambda_0, ..., -lambda_{k-1}]
        """
        return [Fraction(1)] + [-value for value in self.coefficients]

    @classmethod
    def from_characteristic(cls, coefficients: Sequence[RationalLike],
                            applied_to: Optional[SequenceKind] = None) -> "Recurrence":
        """
        Inverse of characteristic_polynomial().

        Args:
            coefficients (list): Monic polynomial coefficients, highest degree first

        Returns:
            Recurrence: The recurrence with that characteristic polynomial
        """
        values = [parse_rational(value) for value in coefficients]
        if len(values) < 2 or values[0] != 1:
            raise DomainError("characteristic polynomial must be monic of degree >= 1")
        return cls.of([-value for value in values[1:]], applied_to)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "order": self.order,
            "coefficients": [format_rational(value) for value in self.coefficients],
        }
        if self.applied_to is not None:
            data["applied_to"] = self.applied_to.value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Recurrence":
        if not isinstance(data, dict):
            raise DomainError("recurrence JSON must be an object")
        coefficients = data.get("coefficients")
        if not isinstance(coefficients, list):
            raise DomainError("'coefficients' must be a list of rational strings")
        applied_to = data.get("applied_to")
        try:
            kind = SequenceKind(applied_to) if applied_to is not None else None
        except ValueError as e:
            raise DomainError(f"'applied_to' must be 'phi' or 'energy', got {applied_to!r}") from e
        return cls(
            data.get("order", len(coefficients)),
            tuple(parse_rational(value) for value in coefficients),
            kind,
        )


@dataclass(frozen=True)
class VerificationReport(BaseEntity):
    """
    Outcome of an exact residual check over a window of levels.

    Attributes:
        holds (bool): True iff every residual is zero and the window certifies
        window (tuple): Inclusive (n_start, n_end)
        first_failure (tuple, optional): (n, residual) of the first nonzero residual
        inconclusive (bool): All residuals zero but the window is too short to certify
        checked (int): Number of levels checked
        residuals (tuple): (n, residual) for every checked level
    """

    holds: bool
    window: Tuple[int, int]
    first_failure: Optional[Tuple[int, Fraction]] = None
    inconclusive: bool = False
    checked: int = 0
    residuals: Tuple[Tuple[int, Fraction], ...] = ()

    @classmethod
    def from_residuals(cls, window: Tuple[int, int],
                       residuals: Sequence[Tuple[int, Fraction]],
                       certified: bool = True) -> "VerificationReport":
        """
        Assemble a report from per-level residuals.

        Args:
            window (tuple): Inclusive (n_start, n_end)
            residuals (list): (n, residual) pairs in level order
            certified (bool): Whether the window is long enough to certify

        Returns:
            VerificationReport: The report
        """
        residuals = tuple((n, parse_rational(value)) for n, value in residuals)
        failure = next(((n, value) for n, value in residuals if value != 0), None)
        return cls(
            holds=failure is None and certified,
            window=(window[0], window[1]),
            first_failure=failure,
            inconclusive=failure is None and not certified,
            checked=len(residuals),
            residuals=residuals,
        )

    def to_dict(self) -> Dict[str, Any]:
        failure = None
        if self.first_failure is not None:
            failure = {"n": self.first_failure[0], "residual": format_rational(self.first_failure[1])}
        return {
            "holds": self.holds,
            "inconclusive": self.inconclusive,
            "window": [self.window[0], self.window[1]],
            "checked": self.checked,
            "first_failure": failure,
            "residuals": [{"n": n, "residual": format_rational(value)} for n, value in self.residuals],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerificationReport":
        failure = data.get("first_failure")
        return cls(
            holds=bool(data["holds"]),
            window=(int(data["window"][0]), int(data["window"][1])),
            first_failure=(int(failure["n"]), parse_rational(failure["residual"])) if failure else None,
            inconclusive=bool(data.get("inconclusive", False)),
            checked=int(data.get("checked", 0)),
            residuals=tuple((int(item["n"]), parse_rational(item["residual"]))
                            for item in data.get("residuals", [])),
        )
