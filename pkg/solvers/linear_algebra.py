"""
Exact linear algebra and polynomial helpers on top of sympy.
Inputs and outputs are Fractions; sympy Rationals stay inside this module.
"""
from fractions import Fraction
from typing import List, Optional, Sequence
import logging

import sympy as sp

from core.errors import DomainError

logger = logging.getLogger(__name__)


def to_sympy(value) -> sp.Rational:
    """Convert a Fraction or int to a sympy Rational."""
    value = Fraction(value)
    return sp.Rational(value.numerator, value.denominator)


def to_fraction(value) -> Fraction:
    """
    Convert a sympy rational expression back to a Fraction.

    Raises:
        DomainError: If the value is not a rational number
    """
    value = sp.sympify(value)
    if not value.is_Rational:
        raise DomainError(f"expected an exact rational, got {value}")
    return Fraction(int(value.p), int(value.q))


def solve_exact(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """
    Solve A x = b exactly by Gauss-Jordan elimination.

    Free parameters of an underdetermined system are set to zero.

    Args:
        rows (list): Coefficient matrix A as a list of rows
        rhs (list): Right-hand side b

    Returns:
        list: A solution x, or None if the system is inconsistent
    """
    matrix = sp.Matrix([[to_sympy(value) for value in row] for row in rows])
    vector = sp.Matrix([to_sympy(value) for value in rhs])
    try:
        solution, params = matrix.gauss_jordan_solve(vector)
    except ValueError:
        logger.debug(f"Inconsistent {matrix.rows}x{matrix.cols} system")
        return None
    if params.shape[0]:
        logger.debug(f"Underdetermined system, setting {params.shape[0]} free parameters to 0")
        solution = solution.subs({symbol: 0 for symbol in params})
    return [to_fraction(value) for value in solution]


def poly_from_roots(roots: Sequence[Fraction]) -> List[Fraction]:
    """
    Monic polynomial with the given roots (with multiplicity), highest degree first.

    Args:
        roots (list): The roots

    Returns:
        list: Coefficients of prod (x - root)
    """
    x = sp.Symbol("x")
    expression = sp.Integer(1)
    for root in roots:
        expression *= (x - to_sympy(root))
    return [to_fraction(value) for value in sp.Poly(expression, x).all_coeffs()]


def poly_multiply(left: Sequence[Fraction], right: Sequence[Fraction]) -> List[Fraction]:
    """Product of two coefficient lists, highest degree first."""
    x = sp.Symbol("x")
    product = (sp.Poly.from_list([to_sympy(value) for value in left], x)
               * sp.Poly.from_list([to_sympy(value) for value in right], x))
    return [to_fraction(value) for value in product.all_coeffs()]


def poly_divide(numerator: Sequence[Fraction], denominator: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """
    Exact quotient of two coefficient lists, or None if the division leaves a remainder.
    """
    x = sp.Symbol("x")
    quotient, remainder = sp.div(sp.Poly.from_list([to_sympy(value) for value in numerator], x),
                                 sp.Poly.from_list([to_sympy(value) for value in denominator], x))
    if not remainder.is_zero:
        return None
    return [to_fraction(value) for value in quotient.all_coeffs()]
