"""
Spectrum-level operations on structure functions: the q-commutator
coefficient conversion and the symbolic polynomial form of phi.
"""
from fractions import Fraction
from math import comb
from typing import List, Optional
import logging

import sympy as sp

from core.errors import UnsupportedFamilyError
from core.event_system import EventDispatcher, EventType, notify
from core.numbers import Classical, RationalLike, parse_rational
from entities.recurrence import VerificationReport
from entities.structure_function import StructureFunction
from solvers.linear_algebra import to_sympy

logger = logging.getLogger(__name__)


def require_classical(sf: StructureFunction, operation: str):
    if not isinstance(sf.bracket, Classical):
        raise UnsupportedFamilyError(
            f"{operation} is defined for the classical bracket only, got {sf.bracket.name}")


def phi_polynomial(sf: StructureFunction, n: sp.Symbol) -> sp.Expr:
    """
    phi as a sympy polynomial in the level symbol, classical bracket only.

    Args:
        sf (StructureFunction): Classical structure function
        n (sympy.Symbol): The level variable

    Returns:
        sympy.Expr: n + mu_1 n^2 + ... + mu_r n^(r+1)
    """
    require_classical(sf, "phi_polynomial")
    weights = (Fraction(1),) + sf.mu
    return sp.Add(*[to_sympy(weight) * n ** (s + 1) for s, weight in enumerate(weights)])


def q_commutator_coefficients(sf: StructureFunction, q: RationalLike) -> List[Fraction]:
    """
    Coefficients alpha_0..alpha_{r+1} of phi(n+1) - q phi(n) = sum_l alpha_l n^l.

    Binomial terms C(s, l) with s < l vanish.

    Args:
        sf (StructureFunction): Classical structure function
        q (Fraction): Any rational q; q = 0 and q = 1 are allowed

    Returns:
        list: alpha_0..alpha_{r+1}

    Raises:
        UnsupportedFamilyError: For q and p,q brackets
    """
    require_classical(sf, "q_commutator_coefficients")
    q = parse_rational(q)
    weights = (Fraction(1),) + sf.mu  # weights[s-1] multiplies n^s
    top = len(weights)

    alpha = [sum(weights, Fraction(0))]
    for l in range(1, top + 1):
        total = -q * weights[l - 1]
        for s in range(l, top + 1):
            total += comb(s, l) * weights[s - 1]
        alpha.append(total)
    logger.debug(f"q-commutator coefficients for {sf.describe()} at q={q}: {alpha}")
    return alpha


def q_commutator_residuals(sf: StructureFunction, q: RationalLike,
                           n_max: Optional[int] = None,
                           dispatcher: Optional[EventDispatcher] = None) -> VerificationReport:
    """
    Check phi(n+1) - q phi(n) - sum_l alpha_l n^l = 0 at n = 0..n_max.

    Both sides are polynomials of degree <= r+1, so r+2 levels certify.

    Args:
        sf (StructureFunction): Classical structure function
        q (Fraction): The deformation parameter
        n_max (int, optional): Last level checked; defaults to r+2
        dispatcher (EventDispatcher, optional): Receives VERIFICATION_FAILED

    Returns:
        VerificationReport: Residual report over the window
    """
    q = parse_rational(q)
    alpha = q_commutator_coefficients(sf, q)
    n_max = sf.r + 2 if n_max is None else n_max

    residuals = []
    for n in range(n_max + 1):
        polynomial = sum((value * n ** l for l, value in enumerate(alpha)), Fraction(0))
        residuals.append((n, sf.phi(n + 1) - q * sf.phi(n) - polynomial))

    report = VerificationReport.from_residuals((0, n_max), residuals, certified=n_max + 1 >= sf.r + 2)
    if report.first_failure is not None:
        logger.warning(f"q-commutator identity fails for {sf.describe()} at n={report.first_failure[0]}")
        notify(dispatcher, EventType.VERIFICATION_FAILED, sf,
               operation="q_commutator", n=report.first_failure[0])
    return report
