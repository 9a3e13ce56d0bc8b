"""
Structure function entity for the k-bonacci toolkit.

A structure function is a polynomial without constant term in a bracket
value B(n): phi(n) = B + mu_1 B^2 + ... + mu_r B^(r+1). The energy levels are
E_n = (phi(n) + phi(n+1))/2.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple
import logging

from core.errors import DomainError
from core.numbers import (
    BracketKind, Classical, PQBracket, QBracket, RationalLike,
    format_rational, parse_rational,
)
from entities.base_entity import BaseEntity

logger = logging.getLogger(__name__)


class SequenceKind(Enum):
    """Which spectrum sequence a relation is applied to."""
    PHI = "phi"
    ENERGY = "energy"


@dataclass(frozen=True)
class StructureFunction(BaseEntity):
    """
    Polynomial structure function over one of the three bracket families.

    Attributes:
        bracket (BracketKind): Classical, QBracket or PQBracket
        mu (tuple): Deformation parameters mu_1..mu_r; empty means phi(n) = B(n)
    """

    bracket: BracketKind = field(default_factory=Classical)
    mu: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        mu = tuple(parse_rational(value) for value in self.mu)
        for index, value in enumerate(mu, start=1):
            if value < 0:
                raise DomainError(f"mu_{index} must be >= 0, got {format_rational(value)}")
        if mu and mu[-1] == 0:
            raise DomainError(f"senior parameter mu_{len(mu)} must be nonzero")
        object.__setattr__(self, "mu", mu)

    @classmethod
    def classical(cls, *mu: RationalLike) -> "StructureFunction":
        return cls(Classical(), tuple(mu))

    @classmethod
    def q_deformed(cls, q: RationalLike, *mu: RationalLike) -> "StructureFunction":
        return cls(QBracket(parse_rational(q)), tuple(mu))

    @classmethod
    def pq_deformed(cls, p: RationalLike, q: RationalLike, *mu: RationalLike) -> "StructureFunction":
        return cls(PQBracket(parse_rational(p), parse_rational(q)), tuple(mu))

    @property
    def r(self) -> int:
        """Number of stored deformation parameters."""
        return len(self.mu)

    @property
    def poly_order(self) -> int:
        """Degree K = r + 1 of phi as a polynomial in the bracket."""
        return self.r + 1

    @property
    def basis_size(self) -> int:
        """
        Number of exponential-polynomial terms spanned by phi and E.

        Returns:
            int: r + 2 for Classical and q brackets, K(K+3)/2 for p,q brackets
        """
        if isinstance(self.bracket, PQBracket):
            k = self.poly_order
            return k * (k + 3) // 2
        return self.r + 2

    def bases(self) -> List[Fraction]:
        """
        The exponential bases of phi(n) (with multiplicity for p,q brackets).

        Returns:
            list: 1 for Classical, q^j for j = 0..r+1, p^a q^b for 1 <= a+b <= K
        """
        if isinstance(self.bracket, PQBracket):
            p, q = self.bracket.p, self.bracket.q
            return [p ** a * q ** (m - a)
                    for m in range(1, self.poly_order + 1)
                    for a in range(m, -1, -1)]
        if isinstance(self.bracket, QBracket):
            return [self.bracket.q ** j for j in range(self.poly_order + 1)]
        return [Fraction(1)]

    def has_base_collisions(self) -> bool:
        """Whether two p,q bases p^a q^b coincide for these parameters."""
        if not isinstance(self.bracket, PQBracket):
            return False
        bases = self.bases()
        return len(set(bases)) < len(bases)

    def phi(self, n: int) -> Fraction:
        """
        Evaluate the structure function.

        Args:
            n (int): Non-negative level

        Returns:
            Fraction: B + sum_j mu_j B^(j+1) with B the bracket value at n
        """
        b = self.bracket.value(n)
        # Horner in B for 1 + mu_1 B + ... + mu_r B^r
        inner = Fraction(0)
        for value in reversed(self.mu):
            inner = (inner + value) * b
        return b * (1 + inner)

    def energy(self, n: int) -> Fraction:
        """
        Energy eigenvalue E_n = (phi(n) + phi(n+1))/2.

        Args:
            n (int): Non-negative level

        Returns:
            Fraction: The exact energy
        """
        return (self.phi(n) + self.phi(n + 1)) / 2

    def values(self, kind: SequenceKind, count: int) -> List[Fraction]:
        """
        The first `count` values of phi or E, sharing phi evaluations.

        Args:
            kind (SequenceKind): Which sequence
            count (int): Number of levels, starting at 0

        Returns:
            list: Values at n = 0..count-1
        """
        if kind is SequenceKind.ENERGY:
            phis = [self.phi(n) for n in range(count + 1)]
            return [(phis[n] + phis[n + 1]) / 2 for n in range(count)]
        return [self.phi(n) for n in range(count)]

    def spectrum(self, n_max: int) -> "Spectrum":
        """
        Tabulate phi and E for levels 0..n_max inclusive.

        Args:
            n_max (int): Highest level, n_max >= 1

        Returns:
            Spectrum: The exact spectrum
        """
        if isinstance(n_max, bool) or not isinstance(n_max, int) or n_max < 1:
            raise DomainError(f"n_max must be a positive integer, got {n_max!r}")
        phis = [self.phi(n) for n in range(n_max + 2)]
        levels = tuple(
            SpectrumLevel(n, phis[n], (phis[n] + phis[n + 1]) / 2)
            for n in range(n_max + 1)
        )
        spectrum = Spectrum(levels)
        if not spectrum.monotone:
            logger.warning(f"Spectrum of {self.describe()} is not strictly increasing")
        return spectrum

    def describe(self) -> str:
        """Short human-readable label."""
        mu = ",".join(format_rational(value) for value in self.mu)
        params = ",".join(f"{key}={value}" for key, value in self.bracket.to_dict().items()
                          if key != "bracket")
        return f"{self.bracket.name}({params})[mu={mu}]"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = dict(self.bracket.to_dict())
        data["mu"] = [format_rational(value) for value in self.mu]
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "StructureFunction":
        if not isinstance(data, dict):
            raise DomainError("structure function JSON must be an object")
        mu = data.get("mu", [])
        if not isinstance(mu, list):
            raise DomainError("'mu' must be a list of rational strings")
        return cls(BracketKind.from_dict(data), tuple(parse_rational(value) for value in mu))


@dataclass(frozen=True)
class SpectrumLevel:
    """One level of a spectrum: index, structure function value and energy."""
    n: int
    phi: Fraction
    energy: Fraction


@dataclass(frozen=True)
class Spectrum(BaseEntity):
    """
    Exact spectrum of levels 0..n_max.

    Attributes:
        levels (tuple): SpectrumLevel entries ordered by n
    """

    levels: Tuple[SpectrumLevel, ...] = ()

    @property
    def monotone(self) -> bool:
        """Whether the energies are strictly increasing in n."""
        energies = [level.energy for level in self.levels]
        return all(a < b for a, b in zip(energies, energies[1:]))

    def to_rows(self) -> List[List[str]]:
        """Rows for the `n,phi,energy` CSV form."""
        return [[str(level.n), format_rational(level.phi), format_rational(level.energy)]
                for level in self.levels]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "levels": [{"n": level.n,
                        "phi": format_rational(level.phi),
                        "energy": format_rational(level.energy)}
                       for level in self.levels],
            "monotone": self.monotone,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Spectrum":
        levels: Sequence[Dict[str, Any]] = data.get("levels", [])
        return cls(tuple(
            SpectrumLevel(int(level["n"]), parse_rational(level["phi"]), parse_rational(level["energy"]))
            for level in levels
        ))
