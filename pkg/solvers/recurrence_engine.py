"""
Recurrence engine: closed-form k-bonacci generators, exact verification,
minimal-order detection and recurrence extension.

A relation of order k on a spectrum sequence s reads
s_{n+1} = lambda_0 s_n + ... + lambda_{k-1} s_{n-k+1} for n >= k-1.
"""
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple
import logging

from core.errors import CoverageError, DomainError
from core.event_system import EventDispatcher, EventType, notify
from core.numbers import RationalLike, parse_rational, pq_bracket, q_binomial
from entities.recurrence import Recurrence, VerificationReport
from entities.structure_function import SequenceKind, StructureFunction
from solvers.linear_algebra import poly_divide, poly_from_roots, poly_multiply, solve_exact

logger = logging.getLogger(__name__)


def _require_order(name: str, value: int, minimum: int):
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise DomainError(f"{name} must be an integer >= {minimum}, got {value!r}")


def _require_positive(name: str, value: Fraction) -> Fraction:
    value = parse_rational(value)
    if value <= 0:
        raise DomainError(f"{name} must be > 0, got {value}")
    return value


def kbonacci_classical(k: int) -> Recurrence:
    """
    The k-term relation shared by every classical oscillator of order k-1.

    Args:
        k (int): Number of terms, k >= 2

    Returns:
        Recurrence: lambda_i = (-1)^i C(k, i+1)
    """
    _require_order("k", k, 2)
    return Recurrence.of([(-1) ** i * comb(k, i + 1) for i in range(k)])


def kbonacci_q(k: int, q: RationalLike) -> Recurrence:
    """
    The k-term relation of an oscillator polynomial of order k-1 in [n]_q.

    Args:
        k (int): Number of terms, k >= 2
        q (Fraction): Deformation parameter, q > 0

    Returns:
        Recurrence: lambda_i = (-1)^i q^(i(i+1)/2) [k choose i+1]_q
    """
    _require_order("k", k, 2)
    q = _require_positive("q", q)
    return Recurrence.of([(-1) ** i * q ** (i * (i + 1) // 2) * q_binomial(k, i + 1, q)
                          for i in range(k)])


def pq_bases(p: Fraction, q: Fraction, poly_order: int) -> List[Fraction]:
    """The bases p^a q^b with 1 <= a+b <= poly_order, with multiplicity."""
    return [p ** a * q ** (m - a) for m in range(1, poly_order + 1) for a in range(m, -1, -1)]


def pq_bracket_recurrence(p: RationalLike, q: RationalLike, poly_order: int) -> Recurrence:
    """
    Relation of order K(K+3)/2 for any oscillator polynomial of order K in [n]_{p,q}.

    The characteristic polynomial is prod (x - p^a q^b) over 1 <= a+b <= K;
    the coefficients do not depend on the mu parameters.

    Args:
        p (Fraction): First deformation parameter, p > 0
        q (Fraction): Second deformation parameter, q > 0
        poly_order (int): K >= 1

    Returns:
        Recurrence: The relation
    """
    _require_order("poly_order", poly_order, 1)
    p = _require_positive("p", p)
    q = _require_positive("q", q)
    return Recurrence.from_characteristic(poly_from_roots(pq_bases(p, q, poly_order)))


def pentanacci_pq(p: RationalLike, q: RationalLike) -> Recurrence:
    """
    Five-term relation for oscillators quadratic in [n]_{p,q}.

    Args:
        p (Fraction): First deformation parameter, p > 0
        q (Fraction): Second deformation parameter, q > 0

    Returns:
        Recurrence: (lambda, rho, sigma, gamma, delta) with delta = p^4 q^4
    """
    p = _require_positive("p", p)
    q = _require_positive("q", q)
    b2, b3 = pq_bracket(2, p, q), pq_bracket(3, p, q)

    lam = b2 + b3
    rho = -(p ** 3 * q + p ** 3 + 2 * p ** 2 * q + p ** 2 * q ** 2
            + p * q ** 3 + 2 * p * q ** 2 + p * q + q ** 3)
    sigma = p * q * (b3 * (b2 + 1) + p ** 2 * q ** 2)
    gamma = -p ** 2 * q ** 2 * (b3 + p * q * b2)
    delta = p ** 4 * q ** 4
    return Recurrence.of([lam, rho, sigma, gamma, delta])


def ninebonacci_pq(p: RationalLike, q: RationalLike) -> Recurrence:
    """
    Nine-term relation for oscillators cubic in [n]_{p,q}.

    A_0 = [4]+[3]+[2] and A_8 = p^10 q^10.
    """
    return pq_bracket_recurrence(p, q, 3)


def ninebonacci_qlimit(q: RationalLike) -> Recurrence:
    """Nine-term relation at p = 1; A_8 = q^10."""
    return ninebonacci_pq(1, q)


def predicted_order_pq(poly_order: int) -> int:
    """
    Minimal order predicted for an oscillator polynomial of order K in [n]_{p,q}.

    Args:
        poly_order (int): K >= 1

    Returns:
        int: K(K+3)/2
    """
    _require_order("poly_order", poly_order, 1)
    return poly_order * (poly_order + 3) // 2


def certification_window(sf: StructureFunction, order: int) -> Tuple[int, int]:
    """
    Levels whose agreement proves an order-k relation for every n.

    The residual is an exponential polynomial with basis_size terms and
    positive bases, so it has fewer than basis_size zeros unless it vanishes.

    Args:
        sf (StructureFunction): The oscillator
        order (int): Relation order k

    Returns:
        tuple: Inclusive (k-1, k-1+basis_size-1)
    """
    start = order - 1
    return start, start + sf.basis_size - 1


def verify_recurrence(sf: StructureFunction, rec: Recurrence,
                      apply_to: SequenceKind = SequenceKind.PHI,
                      window: Optional[Tuple[int, int]] = None,
                      dispatcher: Optional[EventDispatcher] = None) -> VerificationReport:
    """
    Check a recurrence exactly on phi or E over a window of levels.

    Args:
        sf (StructureFunction): The oscillator
        rec (Recurrence): The relation to check
        apply_to (SequenceKind): phi or energy
        window (tuple, optional): Inclusive (n_start, n_end); defaults to the
            certification window
        dispatcher (EventDispatcher, optional): Receives VERIFICATION_FAILED
            and INCONCLUSIVE_WINDOW

    Returns:
        VerificationReport: holds only if the window certifies the identity

    Raises:
        CoverageError: If the window starts before level order-1
    """
    if window is None:
        window = certification_window(sf, rec.order)
    n_start, n_end = window
    if n_start < rec.order - 1:
        raise CoverageError(
            f"window starts at n={n_start}, an order-{rec.order} relation needs n >= {rec.order - 1}")
    if n_end < n_start:
        raise CoverageError(f"empty window ({n_start}, {n_end})")

    values = sf.values(apply_to, n_end + 2)
    residuals = [(n, rec.residual(values, n)) for n in range(n_start, n_end + 1)]
    report = VerificationReport.from_residuals(window, residuals,
                                               certified=n_end - n_start + 1 >= sf.basis_size)

    if report.first_failure is not None:
        n, residual = report.first_failure
        logger.info(f"Order-{rec.order} relation fails on {apply_to.value} of {sf.describe()} at n={n}")
        notify(dispatcher, EventType.VERIFICATION_FAILED, sf,
               order=rec.order, n=n, residual=residual, apply_to=apply_to.value)
    elif report.inconclusive:
        logger.warning(f"Window {window} is shorter than {sf.basis_size} levels, result inconclusive")
        notify(dispatcher, EventType.INCONCLUSIVE_WINDOW, sf,
               window=window, needed=sf.basis_size)
    return report


def detect_minimal_recurrence(sf: StructureFunction, max_order: int,
                              apply_to: SequenceKind = SequenceKind.PHI,
                              dispatcher: Optional[EventDispatcher] = None) -> Optional[Recurrence]:
    """
    Find the smallest order k <= max_order of an exact constant-coefficient relation.

    For each k the first k equations are solved exactly (free variables set
    to zero) and the candidate is then checked over the certification window.

    Args:
        sf (StructureFunction): The oscillator
        max_order (int): Largest order tried, >= 1
        apply_to (SequenceKind): phi or energy
        dispatcher (EventDispatcher, optional): Receives PARAMETER_COLLISION

    Returns:
        Recurrence: The minimal relation, or None if none exists up to max_order
    """
    _require_order("max_order", max_order, 1)
    if sf.has_base_collisions():
        logger.warning(f"Bases p^a q^b collide for {sf.describe()}; the minimal order may drop")
        notify(dispatcher, EventType.PARAMETER_COLLISION, sf, bases=sf.bases())

    span = max(sf.basis_size, max_order)
    values = sf.values(apply_to, 2 * max_order + span + 1)

    for k in range(1, max_order + 1):
        rows = [[values[n - i] for i in range(k)] for n in range(k - 1, 2 * k - 1)]
        rhs = [values[n + 1] for n in range(k - 1, 2 * k - 1)]
        solution = solve_exact(rows, rhs)
        if solution is None:
            continue

        candidate = Recurrence.of(solution, apply_to)
        n_end = k - 1 + max(sf.basis_size, k) - 1
        if all(candidate.residual(values, n) == 0 for n in range(k - 1, n_end + 1)):
            logger.info(f"Minimal order {k} on {apply_to.value} of {sf.describe()}")
            return candidate
        logger.debug(f"Order {k} candidate rejected on the window ({k - 1}, {n_end})")

    logger.info(f"No relation of order <= {max_order} on {apply_to.value} of {sf.describe()}")
    return None


def extend_recurrence(rec: Recurrence, multipliers: Sequence[RationalLike]) -> Recurrence:
    """
    Combine a relation with shifted copies of itself.

    The result encodes R_n + sum_j m_j R_{n-j} = 0, where R_n is the residual
    of rec at level n; it holds wherever rec holds. For one multiplier kappa
    the coefficients are (l0-kappa, l1+l0 kappa, ..., kappa l_{k-1}).

    Args:
        rec (Recurrence): The base relation
        multipliers (list): m_1..m_m, nonempty

    Returns:
        Recurrence: Relation of order rec.order + len(multipliers)
    """
    multipliers = [parse_rational(value) for value in multipliers]
    if not multipliers:
        raise DomainError("extend_recurrence needs at least one multiplier")
    factor = [Fraction(1)] + multipliers
    extended = Recurrence.from_characteristic(
        poly_multiply(rec.characteristic_polynomial(), factor), rec.applied_to)
    logger.debug(f"Extended order {rec.order} to {extended.order}")
    return extended


def cofactor_multipliers(base: Recurrence, target: Recurrence) -> List[Fraction]:
    """
    Multipliers m with extend_recurrence(base, m) == target.

    Args:
        base (Recurrence): Lower-order relation
        target (Recurrence): Higher-order relation

    Returns:
        list: m_1..m_(target.order - base.order)

    Raises:
        DomainError: If target does not extend base
    """
    if target.order <= base.order:
        raise DomainError(f"target order {target.order} must exceed base order {base.order}")
    quotient = poly_divide(target.characteristic_polynomial(), base.characteristic_polynomial())
    if quotient is None:
        raise DomainError(f"order-{target.order} relation is not an extension of the order-{base.order} one")
    return quotient[1:]

