"""
Published closed forms kept verbatim as data.

These are the printed coefficient expressions, transcribed term by term.
They are never used to compute results; the audit module compares them
with the generators, the detector and the solvers.
"""
import re
from fractions import Fraction
from typing import Dict, List, Tuple
import logging

from core.errors import DomainError
from core.numbers import RationalLike, parse_rational, pq_bracket, q_bracket
from entities.recurrence import Recurrence

logger = logging.getLogger(__name__)


def ninebonacci_pq_printed(p: RationalLike, q: RationalLike) -> Recurrence:
    """The nine printed A_j(p,q) expressions evaluated at p, q."""
    p, q = parse_rational(p), parse_rational(q)
    s = p * q

    def b(n: int) -> Fraction:
        return pq_bracket(n, p, q)

    a0 = b(4) + b(3) + b(2)
    a1 = -(b(6) + (1 + s) * b(5) + (1 + s) * b(4) + 2 * s * b(3)
           + s * (1 + s) * b(2) + s * (1 + s ** 2))
    a2 = ((1 + s) * b(7) + 2 * s * b(6) + s * (2 + s) * b(5) + s * (2 + 4 * s + s ** 2) * b(4)
          + s * (1 + 2 * s + 2 * s ** 2) * b(3) + s * (s + 2 * s ** 2) * b(2) + 2 * s ** 3)
    a3 = -s * (b(8) + (1 + s) * b(7) + (1 + 2 * s + s ** 2) * b(6) + s * (3 + 2 * s) * b(5)
               + s * (1 + 4 * s + s ** 2) * b(4) + s * (1 + 2 * s + 3 * s ** 2) * b(3)
               + s ** 2 * (2 + 2 * s + s ** 2) * b(2) + s ** 3 * (2 + s ** 2))
    a4 = (s ** 2 * (b(8) + (1 + s) * b(7) + (1 + 2 * s + s ** 2) * b(6))
          + s ** 3 * ((2 + 3 * s) * b(5) + (1 + 4 * s + s ** 2) * b(4))
          + s ** 4 * ((3 + 2 * s + s ** 2) * b(3) + (1 + 2 * s + 2 * s ** 2) * b(2) + (1 + 2 * s ** 2)))
    a5 = -s ** 3 * ((1 + s) * b(7) + 2 * s * b(6) + s * (1 + 2 * s) * b(5)
                    + s * (1 + 2 * s + 2 * s ** 2) * b(4) + s ** 2 * (2 + 2 * s + s ** 2) * b(3)
                    + s ** 3 * (2 + s) * b(2) + 2 * s ** 4)
    a6 = (s ** 7 * (b(6) + 2 * b(3) + (1 + s) * b(2) + (2 + s ** 2))
          + s ** 5 * (1 + s) * b(5) + s ** 6 * (1 + s) * b(4))
    a7 = -s ** 7 * (b(4) + s * b(3) + s ** 2 * b(2))
    a8 = s ** 10
    return Recurrence.of([a0, a1, a2, a3, a4, a5, a6, a7, a8])


def ninebonacci_qlimit_printed(q: RationalLike) -> Recurrence:
    """
    The nine printed A_j(q) expressions evaluated at q.

    The printed A_5 opens a parenthesis it never closes; it is read as
    closing at the end of the expression.
    """
    q = parse_rational(q)

    def b(n: int) -> Fraction:
        return q_bracket(n, q)

    a0 = b(4) + b(3) + b(2)
    a1 = -2 * q ** 2 * (b(4) + b(3) + 2 * q) - q ** 2 * b(2)
    a2 = b(8) + 5 * q * b(6) + 2 * q * b(5) + q * b(4) + 6 * q ** 2 * b(3) + q ** 3 * b(2) + 6 * q ** 3
    a3 = -q * (3 * b(8) + 6 * q * b(6) + 2 * q * b(5) + 5 * q ** 2 * b(4) + 6 * q ** 3 * b(3)
               + 8 * q ** 3 * b(2) + 2 * q ** 4)
    a4 = (3 * q ** 2 * b(8) + 6 * q ** 3 * b(6) + 2 * q ** 4 * b(5) + 11 * q ** 4 * b(4)
          + 4 * q ** 5 * b(2) + 4 * q ** 6)
    a5 = -q ** 3 * (b(8) + 6 * q * b(6) + q * b(5) + 4 * q ** 2 * b(4) + 3 * q ** 3 * b(3)
                    + 3 * q ** 3 * b(2) + 4 * q ** 4)
    a6 = 2 * q ** 5 * b(6) + q ** 6 * b(5) + q ** 6 * b(4) + 2 * q ** 7 * b(3) + 3 * q ** 8 * b(2) + 3 * q ** 9
    a7 = -q ** 7 * (b(4) + q * b(3) + q ** 2 * b(2))
    a8 = q ** 10
    return Recurrence.of([a0, a1, a2, a3, a4, a5, a6, a7, a8])


def qlimit_multipliers_printed(q: RationalLike) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """The printed (t, x, y, z) multipliers of the four shifted five-term copies."""
    q = parse_rational(q)

    def b(n: int) -> Fraction:
        return q_bracket(n, q)

    t = -(b(2) + b(3))
    x = -(2 * q ** 2 + 1) * (b(4) + b(3)) - b(2) * (q ** 2 - 1) - 4 * q ** 3
    y = (-b(8) - 5 * q * b(6) - 2 * q * b(5) + b(4) * (2 * q ** 2 - q + 2) + b(3) * (-4 * q ** 2 + 2)
         + b(2) * (-q ** 3 + q ** 2 - 1) - 2 * q ** 3)
    z = (3 * q * b(8) + b(6) * (6 * q ** 2 + 5 * q) + 2 * q * b(5) * (q + 1) + b(4) * q * (5 * q ** 2 + 1)
         + b(3) * (6 * q ** 4 + 6 * q ** 2 + 4) + b(2) * (8 * q ** 4 + q ** 3 + 1) + 2 * q ** 5 + 6 * q ** 3)
    return t, x, y, z


def six_term_pattern(rec: Recurrence, kappa: RationalLike) -> Recurrence:
    """
    The printed six-term pattern built from a five-term relation and kappa.

    Returns:
        Recurrence: (l-k, r+l k, s+r k, g+s k, d+g k, k)
    """
    if rec.order != 5:
        raise DomainError(f"the six-term pattern needs an order-5 relation, got order {rec.order}")
    kappa = parse_rational(kappa)
    lam, rho, sigma, gamma, delta = rec.coefficients
    return Recurrence.of([lam - kappa, rho + lam * kappa, sigma + rho * kappa,
                          gamma + sigma * kappa, delta + gamma * kappa, kappa])


_TERM = re.compile(r"^(\d*)mu(\d+)$")


def parse_linear_form(text: str, size: int) -> Tuple[Fraction, ...]:
    """
    Parse "4mu1+6mu2" into (4, 6, 0, ...) of the given size.

    Args:
        text (str): '+'-joined terms of the form [c]mu<j>
        size (int): Number of mu parameters

    Returns:
        tuple: Coefficients of mu_1..mu_size
    """
    form = [Fraction(0)] * size
    for term in text.split("+"):
        match = _TERM.match(term.strip())
        if not match:
            raise DomainError(f"malformed linear form term {term!r}")
        coefficient = Fraction(int(match.group(1))) if match.group(1) else Fraction(1)
        index = int(match.group(2))
        if not 1 <= index <= size:
            raise DomainError(f"mu{index} out of range for a row with {size} parameters")
        form[index - 1] += coefficient
    return tuple(form)


# Printed rows: column -> list of (printed subscript, printed linear form)
INHOMOGENEOUS_TABLE: Dict[int, Dict[str, List[Tuple[int, str]]]] = {
    1: {
        "alpha_tilde": [(0, "2mu1")],
        "alpha_tilde_tilde": [(0, "2mu1")],
        "alpha": [(0, "4mu1")],
    },
    2: {
        "alpha_tilde": [(0, "2mu1"), (1, "6mu2")],
        "alpha_tilde_tilde": [(0, "2mu1+6mu2"), (1, "6mu2")],
        "alpha": [(0, "4mu1+6mu2"), (1, "12mu2")],
    },
    3: {
        "alpha_tilde": [(0, "2mu1+2mu3"), (1, "6mu2"), (2, "12mu3")],
        "alpha_tilde_tilde": [(0, "2mu1+6mu2+14mu3"), (1, "6mu2+24mu3"), (2, "12mu3")],
        "alpha": [(0, "4mu1+6mu2+16mu3"), (1, "12mu2+24mu3"), (2, "24mu3")],
    },
    4: {
        "alpha_tilde": [(0, "2mu1+2mu3"), (1, "6mu2+10mu4"), (2, "12mu3"), (3, "20mu4")],
        "alpha_tilde_tilde": [(0, "2mu1+6mu2+14mu3+30mu4"), (1, "6mu2+24mu3+70mu4"),
                              (2, "12mu3+60mu4"), (2, "20mu4")],
        "alpha": [(0, "4mu1+6mu2+16mu3+30mu4"), (1, "12mu2+24mu3+80mu4"),
                  (2, "24mu3+60mu4"), (2, "40mu4")],
    },
    5: {
        "alpha_tilde": [(0, "2mu1+2mu3+2mu5"), (1, "6mu2+10mu4"), (2, "12mu3+30mu5"),
                        (3, "20mu4"), (4, "30mu5")],
        "alpha_tilde_tilde": [(0, "2mu1+6mu2+14mu3+30mu4+62mu5"), (1, "6mu2+24mu3+70mu4+180mu5"),
                              (2, "12mu3+60mu4+210mu5"), (3, "20mu4+120mu5"), (4, "30mu5")],
        "alpha": [(0, "4mu1+6mu2+16mu3+30mu4+64mu5"), (1, "12mu2+24mu3+80mu4+180mu5"),
                  (2, "24mu3+60mu4+240mu5"), (3, "40mu4+120mu5"), (4, "60mu5")],
    },
}
