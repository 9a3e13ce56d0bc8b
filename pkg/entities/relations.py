"""
Inhomogeneous and quasi-Fibonacci relation entities.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple
import logging

from core.errors import DomainError
from core.numbers import format_rational, parse_rational
from entities.base_entity import BaseEntity

logger = logging.getLogger(__name__)


def _rationals(values) -> Tuple[Fraction, ...]:
    return tuple(parse_rational(value) for value in values)


@dataclass(frozen=True)
class InhomogeneousRelation(BaseEntity):
    """
    E_{n+1} = lambda E_n + rho E_{n-1} + sum_i (alpha_i / 2) n^i.

    alpha is normalised to the doubled energy phi(n) + phi(n+1); alpha_tilde
    and alpha_tilde_tilde are the parts solved from the phi(n-1..n+1) and
    phi(n..n+2) relations and sum to alpha.

    Attributes:
        lambda_ (Fraction): First coefficient, 2 for polynomial oscillators
        rho (Fraction): Second coefficient, -1 for polynomial oscillators
        alpha (tuple): alpha_0..alpha_{k-1}
        alpha_tilde (tuple): First-relation inhomogeneity (may be empty)
        alpha_tilde_tilde (tuple): Second-relation inhomogeneity (may be empty)
    """

    lambda_: Fraction = Fraction(2)
    rho: Fraction = Fraction(-1)
    alpha: Tuple[Fraction, ...] = ()
    alpha_tilde: Tuple[Fraction, ...] = ()
    alpha_tilde_tilde: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lambda_", parse_rational(self.lambda_))
        object.__setattr__(self, "rho", parse_rational(self.rho))
        object.__setattr__(self, "alpha", _rationals(self.alpha))
        object.__setattr__(self, "alpha_tilde", _rationals(self.alpha_tilde))
        object.__setattr__(self, "alpha_tilde_tilde", _rationals(self.alpha_tilde_tilde))
        if self.alpha_tilde or self.alpha_tilde_tilde:
            if not len(self.alpha) == len(self.alpha_tilde) == len(self.alpha_tilde_tilde):
                raise DomainError("alpha, alpha_tilde and alpha_tilde_tilde must have equal length")
            for i, (a, t, tt) in enumerate(zip(self.alpha, self.alpha_tilde, self.alpha_tilde_tilde)):
                if a != t + tt:
                    raise DomainError(f"alpha_{i} must equal alpha_tilde_{i} + alpha_tilde_tilde_{i}")

    @property
    def degree(self) -> int:
        """Number of inhomogeneity coefficients k."""
        return len(self.alpha)

    @property
    def energy_alpha(self) -> Tuple[Fraction, ...]:
        """The inhomogeneity coefficients of the energy relation itself."""
        return tuple(value / 2 for value in self.alpha)

    def inhomogeneity(self, n: int) -> Fraction:
        """sum_i (alpha_i / 2) n^i at level n."""
        total = Fraction(0)
        for value in reversed(self.energy_alpha):
            total = total * n + value
        return total

    def perturbed(self, index: int, delta) -> "InhomogeneousRelation":
        """Copy with alpha_index and alpha_tilde_index shifted by delta."""
        delta = parse_rational(delta)
        alpha = list(self.alpha)
        alpha[index] += delta
        tilde = list(self.alpha_tilde)
        if tilde:
            tilde[index] += delta
        return InhomogeneousRelation(self.lambda_, self.rho, tuple(alpha), tuple(tilde),
                                     self.alpha_tilde_tilde)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lambda": format_rational(self.lambda_),
            "rho": format_rational(self.rho),
            "alpha": [format_rational(value) for value in self.alpha],
            "alpha_tilde": [format_rational(value) for value in self.alpha_tilde],
            "alpha_tilde_tilde": [format_rational(value) for value in self.alpha_tilde_tilde],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "InhomogeneousRelation":
        return cls(
            parse_rational(data.get("lambda", "2")),
            parse_rational(data.get("rho", "-1")),
            _rationals(data.get("alpha", [])),
            _rationals(data.get("alpha_tilde", [])),
            _rationals(data.get("alpha_tilde_tilde", [])),
        )


class QuasiMethod(Enum):
    """How a quasi-Fibonacci coefficient track was obtained."""
    RATIO = "ratio"
    RECURSIVE = "recursive"


@dataclass(frozen=True)
class QuasiPoint:
    """Coefficients (lambda_n, rho_n) at level n."""
    n: int
    lambda_: Fraction
    rho: Fraction


@dataclass(frozen=True)
class QuasiCoefficientTrack(BaseEntity):
    """
    Level-dependent coefficients of E_{n+1} = lambda_n E_n + rho_n E_{n-1}.

    Attributes:
        method (QuasiMethod): Ratio solve or recursive chain
        points (tuple): QuasiPoint entries ordered by n
        initial_c (Fraction, optional): lambda_0 of a recursive chain
        singular_points (tuple): (n, expression) pairs skipped by a range runner
    """

    method: QuasiMethod
    points: Tuple[QuasiPoint, ...] = ()
    initial_c: Optional[Fraction] = None
    singular_points: Tuple[Tuple[int, str], ...] = ()

    @property
    def lambda_seq(self) -> List[Tuple[int, Fraction]]:
        return [(point.n, point.lambda_) for point in self.points]

    @property
    def rho_seq(self) -> List[Tuple[int, Fraction]]:
        return [(point.n, point.rho) for point in self.points]

    def point(self, n: int) -> Optional[QuasiPoint]:
        """The stored point at level n, if any."""
        for point in self.points:
            if point.n == n:
                return point
        return None

    def covers(self, n_start: int, n_end: int) -> bool:
        """Whether every level of the inclusive window has a point."""
        stored = {point.n for point in self.points}
        return all(n in stored for n in range(n_start, n_end + 1))

    def with_point(self, n: int, lambda_=None, rho=None) -> "QuasiCoefficientTrack":
        """Copy with the point at level n replaced."""
        points = []
        for point in self.points:
            if point.n == n:
                point = QuasiPoint(
                    n,
                    parse_rational(lambda_) if lambda_ is not None else point.lambda_,
                    parse_rational(rho) if rho is not None else point.rho,
                )
            points.append(point)
        return QuasiCoefficientTrack(self.method, tuple(points), self.initial_c, self.singular_points)

    def to_rows(self) -> List[List[str]]:
        """Rows for the `n,lambda,rho` CSV form."""
        return [[str(point.n), format_rational(point.lambda_), format_rational(point.rho)]
                for point in self.points]

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"method": self.method.value}
        if self.initial_c is not None:
            data["c"] = format_rational(self.initial_c)
        data["points"] = [{"n": point.n,
                           "lambda": format_rational(point.lambda_),
                           "rho": format_rational(point.rho)}
                          for point in self.points]
        if self.singular_points:
            data["singular_points"] = [{"n": n, "expression": expression}
                                       for n, expression in self.singular_points]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "QuasiCoefficientTrack":
        c = data.get("c")
        return cls(
            QuasiMethod(data["method"]),
            tuple(QuasiPoint(int(item["n"]), parse_rational(item["lambda"]), parse_rational(item["rho"]))
                  for item in data.get("points", [])),
            parse_rational(c) if c is not None else None,
            tuple((int(item["n"]), str(item["expression"])) for item in data.get("singular_points", [])),
        )
