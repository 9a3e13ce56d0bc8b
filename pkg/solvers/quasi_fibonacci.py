"""
Quasi-Fibonacci coefficient tracks: level-dependent (lambda_n, rho_n) with
E_{n+1} = lambda_n E_n + rho_n E_{n-1}.

Two constructions are provided: solving the pair of phi relations at n and
n+1 (ratio method) and the E-level chain with rho_n = lambda_{n-1}.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple
import logging

from core.errors import CoverageError, DomainError, SingularPointError
from core.event_system import EventDispatcher, EventType, notify
from core.numbers import RationalLike, format_rational, parse_rational
from entities.recurrence import VerificationReport
from entities.relations import QuasiCoefficientTrack, QuasiMethod, QuasiPoint
from entities.structure_function import SequenceKind, StructureFunction

logger = logging.getLogger(__name__)

RATIO_DENOMINATOR = "phi(n)^2 - phi(n+1)*phi(n-1)"


def quasi_ratio(sf: StructureFunction, n: int) -> Tuple[Fraction, Fraction]:
    """
    Solve phi(n+1) = l phi(n) + r phi(n-1) and phi(n+2) = l phi(n+1) + r phi(n).

    Args:
        sf (StructureFunction): The oscillator
        n (int): Level, n >= 1

    Returns:
        tuple: (lambda_n, rho_n)

    Raises:
        SingularPointError: If phi(n) or the system determinant vanishes
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"quasi_ratio needs n >= 1, got {n!r}")
    prev, cur, nxt, after = (sf.phi(n - 1), sf.phi(n), sf.phi(n + 1), sf.phi(n + 2))

    if cur == 0:
        raise SingularPointError(n, "phi(n)")
    denominator = cur * cur - nxt * prev
    if denominator == 0:
        raise SingularPointError(n, RATIO_DENOMINATOR)

    rho = (after * cur - nxt * nxt) / denominator
    lam = (nxt - rho * prev) / cur
    return lam, rho


def quasi_ratio_track(sf: StructureFunction, n_start: int, n_end: int,
                      dispatcher: Optional[EventDispatcher] = None) -> QuasiCoefficientTrack:
    """
    Run quasi_ratio over an inclusive range, collecting singular points.

    Args:
        sf (StructureFunction): The oscillator
        n_start (int): First level, >= 1
        n_end (int): Last level
        dispatcher (EventDispatcher, optional): Receives SINGULAR_POINT

    Returns:
        QuasiCoefficientTrack: Ratio-method track; singular levels are listed, not stored
    """
    if n_start < 1 or n_end < n_start:
        raise DomainError(f"invalid range ({n_start}, {n_end}), need 1 <= n_start <= n_end")
    points, singular = [], []
    for n in range(n_start, n_end + 1):
        try:
            lam, rho = quasi_ratio(sf, n)
        except SingularPointError as e:
            logger.warning(f"Singular point of the ratio method at n={e.n}: {e.expression}")
            notify(dispatcher, EventType.SINGULAR_POINT, sf, n=e.n, expression=e.expression)
            singular.append((e.n, e.expression))
            continue
        points.append(QuasiPoint(n, lam, rho))
    return QuasiCoefficientTrack(QuasiMethod.RATIO, tuple(points), None, tuple(singular))


def quasi_recursive(sf: StructureFunction, c: RationalLike, n_max: int) -> QuasiCoefficientTrack:
    """
    Chain lambda_{n+1} = E_{n+2}/E_{n+1} - (E_n/E_{n+1}) lambda_n from lambda_0 = c.

    Args:
        sf (StructureFunction): The oscillator
        c (Fraction): Initial value lambda_0
        n_max (int): Last level stored, >= 1

    Returns:
        QuasiCoefficientTrack: Points n = 1..n_max with rho_n = lambda_{n-1}

    Raises:
        SingularPointError: If an energy in the chain vanishes
    """
    if isinstance(n_max, bool) or not isinstance(n_max, int) or n_max < 1:
        raise DomainError(f"n_max must be a positive integer, got {n_max!r}")
    c = parse_rational(c)
    energies = sf.values(SequenceKind.ENERGY, n_max + 2)

    lambdas = [c]
    for n in range(n_max):
        if energies[n + 1] == 0:
            raise SingularPointError(n + 1, "E(n)")
        lambdas.append(energies[n + 2] / energies[n + 1] - energies[n] / energies[n + 1] * lambdas[n])

    points = tuple(QuasiPoint(n, lambdas[n], lambdas[n - 1]) for n in range(1, n_max + 1))
    logger.debug(f"Recursive track for {sf.describe()} with c={c} up to n={n_max}")
    return QuasiCoefficientTrack(QuasiMethod.RECURSIVE, points, c)


def verify_quasi(sf: StructureFunction, track: QuasiCoefficientTrack,
                 window: Optional[Tuple[int, int]] = None,
                 dispatcher: Optional[EventDispatcher] = None) -> VerificationReport:
    """
    Check E_{n+1} - lambda_n E_n - rho_n E_{n-1} = 0 at every level of a window.

    Args:
        sf (StructureFunction): The oscillator
        track (QuasiCoefficientTrack): The coefficients
        window (tuple, optional): Inclusive levels; defaults to the track's range
        dispatcher (EventDispatcher, optional): Receives VERIFICATION_FAILED

    Returns:
        VerificationReport: Pointwise residual report

    Raises:
        CoverageError: If the track has no point for some level of the window
    """
    if window is None:
        if not track.points:
            raise CoverageError("track has no points")
        window = (track.points[0].n, track.points[-1].n)
    n_start, n_end = window
    if n_start < 1 or n_end < n_start or not track.covers(n_start, n_end):
        raise CoverageError(f"track does not cover the window ({n_start}, {n_end})")

    energies = sf.values(SequenceKind.ENERGY, n_end + 2)
    residuals = []
    for n in range(n_start, n_end + 1):
        point = track.point(n)
        residuals.append((n, energies[n + 1] - point.lambda_ * energies[n] - point.rho * energies[n - 1]))

    report = VerificationReport.from_residuals((n_start, n_end), residuals)
    if report.first_failure is not None:
        logger.info(f"Quasi-Fibonacci relation fails for {sf.describe()} at n={report.first_failure[0]}")
        notify(dispatcher, EventType.VERIFICATION_FAILED, sf,
               operation="quasi", n=report.first_failure[0])
    return report


@dataclass(frozen=True)
class ClosedFormComparison:
    """lambda_n from the chain against the E-level and phi-level closed forms."""
    n: int
    recursive: Fraction
    energy_form: Fraction
    phi_form: Optional[Fraction]

    @property
    def energy_agrees(self) -> bool:
        return self.energy_form == self.recursive

    @property
    def phi_agrees(self) -> bool:
        return self.phi_form == self.recursive

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "recursive": format_rational(self.recursive),
            "energy_form": format_rational(self.energy_form),
            "phi_form": format_rational(self.phi_form) if self.phi_form is not None else None,
            "energy_agrees": self.energy_agrees,
            "phi_agrees": self.phi_agrees,
        }


def _alternating_closed_form(values: List[Fraction], c: Fraction, n: int) -> Optional[Fraction]:
    """(sum_{j=2}^{n+1} (-1)^(n-j+1) s_j + (-1)^n c s_0) / s_n, None when s_n = 0."""
    if values[n] == 0:
        return None
    total = sum(((-1) ** (n - j + 1) * values[j] for j in range(2, n + 2)), Fraction(0))
    total += (-1) ** n * c * values[0]
    return total / values[n]


def quasi_closed_form_report(sf: StructureFunction, c: RationalLike, n_max: int,
                             dispatcher: Optional[EventDispatcher] = None) -> List[ClosedFormComparison]:
    """
    Compare the recursive chain with both closed forms of lambda_n.

    The phi-level form carries c through phi(0) = 0, so it generally differs
    from the chain; every difference is logged.

    Args:
        sf (StructureFunction): The oscillator
        c (Fraction): Initial value lambda_0
        n_max (int): Last level compared
        dispatcher (EventDispatcher, optional): Receives CLOSED_FORM_DISCREPANCY

    Returns:
        list: One ClosedFormComparison per level 1..n_max
    """
    c = parse_rational(c)
    track = quasi_recursive(sf, c, n_max)
    energies = sf.values(SequenceKind.ENERGY, n_max + 2)
    phis = sf.values(SequenceKind.PHI, n_max + 2)

    comparisons = []
    for point in track.points:
        comparison = ClosedFormComparison(
            point.n, point.lambda_,
            _alternating_closed_form(energies, c, point.n),
            _alternating_closed_form(phis, c, point.n),
        )
        comparisons.append(comparison)
        if not comparison.energy_agrees:
            logger.warning(f"E-level closed form differs from the chain at n={point.n}")

    differing = [item.n for item in comparisons if not item.phi_agrees]
    if differing:
        logger.warning(f"phi-level closed form differs from the chain at n={differing}")
        notify(dispatcher, EventType.CLOSED_FORM_DISCREPANCY, sf,
               label="quasi_phi_closed_form", levels=differing)
    return comparisons
