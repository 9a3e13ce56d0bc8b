"""
Inhomogeneous Fibonacci relations for oscillators polynomial in n.

With lambda = 2 and rho = -1 fixed, the inhomogeneity is found by matching
monomial coefficients in the two phi relations
  phi(n+1) = 2 phi(n) - phi(n-1) + sum alpha~_i n^i
  phi(n+2) = 2 phi(n+1) - phi(n) + sum alpha~~_i n^i
whose sum is the relation on 2E_n.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging

import sympy as sp

from core.errors import CoverageError, DomainError
from core.event_system import EventDispatcher, EventType, notify
from core.numbers import format_rational, parse_rational
from entities.recurrence import VerificationReport
from entities.relations import InhomogeneousRelation
from entities.structure_function import SequenceKind, StructureFunction
from solvers.linear_algebra import to_fraction
from solvers.spectra import require_classical, phi_polynomial

logger = logging.getLogger(__name__)

LinearForm = Tuple[Fraction, ...]

_N = sp.Symbol("n")


def _difference_coefficients(phi: sp.Expr, shift: int, length: int) -> List[sp.Expr]:
    """Ascending n-coefficients of phi(n+1+s) - 2 phi(n+s) + phi(n-1+s)."""
    expression = (phi.subs(_N, _N + 1 + shift) - 2 * phi.subs(_N, _N + shift)
                  + phi.subs(_N, _N - 1 + shift))
    poly = sp.Poly(sp.expand(expression), _N)
    if not poly.is_zero and poly.degree() >= length:
        raise DomainError(f"inhomogeneity of degree {poly.degree()} needs more than {length} coefficients")
    ascending = list(reversed(poly.all_coeffs())) if not poly.is_zero else []
    return ascending + [sp.Integer(0)] * (length - len(ascending))


def solve_inhomogeneous(sf: StructureFunction, degree: Optional[int] = None) -> InhomogeneousRelation:
    """
    Solve the inhomogeneous relation of a classical oscillator exactly.

    Args:
        sf (StructureFunction): Classical structure function of order r+1
        degree (int, optional): Number k of inhomogeneity coefficients;
            defaults to r, larger values are zero padded

    Returns:
        InhomogeneousRelation: lambda = 2, rho = -1 and the solved alphas

    Raises:
        UnsupportedFamilyError: For q and p,q brackets
        DomainError: If degree < r, where no solution exists
    """
    require_classical(sf, "solve_inhomogeneous")
    degree = sf.r if degree is None else degree
    if degree < sf.r:
        raise DomainError(f"an order-{sf.poly_order} oscillator needs at least {sf.r} "
                          f"inhomogeneity coefficients, got {degree}")

    phi = phi_polynomial(sf, _N)
    alpha_tilde = [to_fraction(value) for value in _difference_coefficients(phi, 0, degree)]
    alpha_tilde_tilde = [to_fraction(value) for value in _difference_coefficients(phi, 1, degree)]
    alpha = [a + b for a, b in zip(alpha_tilde, alpha_tilde_tilde)]

    logger.debug(f"Inhomogeneous relation for {sf.describe()}: alpha={alpha}")
    return InhomogeneousRelation(Fraction(2), Fraction(-1), tuple(alpha),
                                 tuple(alpha_tilde), tuple(alpha_tilde_tilde))


def inhomogeneous_window(sf: StructureFunction, rel: InhomogeneousRelation) -> Tuple[int, int]:
    """
    Levels that certify an inhomogeneous relation.

    The residual is a polynomial in n of degree <= max(r+1, k-1).
    """
    needed = max(sf.r + 2, rel.degree)
    return 1, needed


def verify_inhomogeneous(sf: StructureFunction, rel: InhomogeneousRelation,
                         window: Optional[Tuple[int, int]] = None,
                         dispatcher: Optional[EventDispatcher] = None) -> VerificationReport:
    """
    Check E_{n+1} - lambda E_n - rho E_{n-1} - sum (alpha_i/2) n^i = 0 exactly.

    Args:
        sf (StructureFunction): Classical structure function
        rel (InhomogeneousRelation): The relation to check
        window (tuple, optional): Inclusive levels; defaults to the certifying window
        dispatcher (EventDispatcher, optional): Receives VERIFICATION_FAILED
            and INCONCLUSIVE_WINDOW

    Returns:
        VerificationReport: The residual report
    """
    require_classical(sf, "verify_inhomogeneous")
    default = inhomogeneous_window(sf, rel)
    n_start, n_end = window if window is not None else default
    if n_start < 1 or n_end < n_start:
        raise CoverageError(f"window ({n_start}, {n_end}) must satisfy 1 <= n_start <= n_end")

    energies = sf.values(SequenceKind.ENERGY, n_end + 2)
    residuals = [
        (n, energies[n + 1] - rel.lambda_ * energies[n] - rel.rho * energies[n - 1] - rel.inhomogeneity(n))
        for n in range(n_start, n_end + 1)
    ]
    needed = default[1] - default[0] + 1
    report = VerificationReport.from_residuals((n_start, n_end), residuals,
                                               certified=n_end - n_start + 1 >= needed)
    if report.first_failure is not None:
        logger.info(f"Inhomogeneous relation fails for {sf.describe()} at n={report.first_failure[0]}")
        notify(dispatcher, EventType.VERIFICATION_FAILED, sf,
               operation="inhomogeneous", n=report.first_failure[0])
    elif report.inconclusive:
        logger.warning(f"Window ({n_start}, {n_end}) is shorter than {needed} levels, result inconclusive")
        notify(dispatcher, EventType.INCONCLUSIVE_WINDOW, sf, window=(n_start, n_end), needed=needed)
    return report


def check_inhomogeneous_candidate(sf: StructureFunction, alpha: Sequence,
                                  dispatcher: Optional[EventDispatcher] = None) -> VerificationReport:
    """
    Verify an arbitrary inhomogeneity with lambda = 2, rho = -1.

    Args:
        sf (StructureFunction): Classical structure function
        alpha (list): Candidate alpha_0..alpha_{k-1}, normalised to 2E_n

    Returns:
        VerificationReport: The residual report
    """
    rel = InhomogeneousRelation(Fraction(2), Fraction(-1), tuple(parse_rational(value) for value in alpha))
    return verify_inhomogeneous(sf, rel, dispatcher=dispatcher)


@dataclass(frozen=True)
class InhomogeneousTableRow:
    """
    Solved coefficients of one table row as linear forms in mu_1..mu_k.

    Attributes:
        k (int): Polynomial order minus one
        alpha_tilde (tuple): LinearForm per index
        alpha_tilde_tilde (tuple): LinearForm per index
        alpha (tuple): LinearForm per index
    """
    k: int
    alpha_tilde: Tuple[LinearForm, ...]
    alpha_tilde_tilde: Tuple[LinearForm, ...]
    alpha: Tuple[LinearForm, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "lambda": "2",
            "rho": "-1",
            "alpha_tilde": [format_linear_form(form) for form in self.alpha_tilde],
            "alpha_tilde_tilde": [format_linear_form(form) for form in self.alpha_tilde_tilde],
            "alpha": [format_linear_form(form) for form in self.alpha],
        }


def format_linear_form(form: LinearForm) -> str:
    """Render (c_1, ..., c_r) as e.g. "4mu1+6mu2"; the zero form is "0"."""
    terms = []
    for j, coefficient in enumerate(form, start=1):
        if coefficient == 0:
            continue
        magnitude = abs(coefficient)
        text = f"mu{j}" if magnitude == 1 else f"{format_rational(magnitude)}mu{j}"
        sign = "-" if coefficient < 0 else "+"
        terms.append(text if not terms and sign == "+" else f"{sign}{text}")
    return "".join(terms) or "0"


def inhomogeneous_row(k: int) -> InhomogeneousTableRow:
    """
    Solve row k of the table with symbolic mu_1..mu_k.

    Args:
        k (int): k >= 1

    Returns:
        InhomogeneousTableRow: Linear forms per coefficient
    """
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise DomainError(f"table row k must be a positive integer, got {k!r}")
    mus = sp.symbols(f"mu1:{k + 1}")
    phi = _N + sp.Add(*[mu * _N ** (j + 2) for j, mu in enumerate(mus)])

    def forms(shift: int) -> Tuple[LinearForm, ...]:
        return tuple(
            tuple(to_fraction(sp.expand(value).coeff(mu)) for mu in mus)
            for value in _difference_coefficients(phi, shift, k)
        )

    tilde, tilde_tilde = forms(0), forms(1)
    total = tuple(tuple(a + b for a, b in zip(left, right)) for left, right in zip(tilde, tilde_tilde))
    return InhomogeneousTableRow(k, tilde, tilde_tilde, total)


def inhomogeneous_table(r_max: int = 5) -> List[InhomogeneousTableRow]:
    """Rows k = 1..r_max of the inhomogeneous coefficient table."""
    return [inhomogeneous_row(k) for k in range(1, r_max + 1)]
