"""
Tests for exact rationals and bracket numbers.
"""
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis.strategies import integers

from core.errors import DomainError, KBonacciError, RationalFormatError
from core.numbers import (
    BracketKind, Classical, PQBracket, QBracket, format_rational, parse_rational,
    pq_bracket, q_binomial, q_bracket, q_factorial,
)
from tests.strategies import positive_rationals


class TestRationalWireFormat:

    def test_parse_integer_and_fraction(self):
        assert parse_rational("-4") == Fraction(-4)
        assert parse_rational("3/6") == Fraction(1, 2)
        assert parse_rational(" 7/2 ") == Fraction(7, 2)
        assert parse_rational(5) == Fraction(5)

    @pytest.mark.parametrize("text", ["1.5", "1/0", "abc", "", "1/-2", "2e3"])
    def test_malformed_text_is_rejected(self, text):
        with pytest.raises(RationalFormatError):
            parse_rational(text)

    def test_bool_and_float_are_rejected(self):
        with pytest.raises(RationalFormatError):
            parse_rational(True)
        with pytest.raises(RationalFormatError):
            parse_rational(0.5)

    def test_format_error_is_a_toolkit_error(self):
        with pytest.raises(KBonacciError):
            parse_rational("x/y")

    def test_format_reduced(self):
        assert format_rational(Fraction(-1, 2)) == "-1/2"
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(0) == "0"

    @given(integers(-10 ** 6, 10 ** 6), integers(1, 10 ** 6))
    def test_format_then_parse_is_identity(self, numerator, denominator):
        value = Fraction(numerator, denominator)
        assert parse_rational(format_rational(value)) == value


class TestBrackets:

    def test_q_bracket_values(self):
        assert q_bracket(0, 2) == 0
        assert q_bracket(3, 2) == 7
        assert q_bracket(5, 1) == 5
        assert q_bracket(2, Fraction(1, 2)) == Fraction(3, 2)

    @pytest.mark.parametrize("q", [0, -1, "-1/2"])
    def test_q_bracket_needs_positive_q(self, q):
        with pytest.raises(DomainError):
            q_bracket(3, q)

    def test_negative_level_is_rejected(self):
        with pytest.raises(DomainError):
            q_bracket(-1, 2)

    @given(integers(0, 30), positive_rationals())
    def test_q_bracket_recursion(self, n, q):
        assert q_bracket(n + 1, q) == 1 + q * q_bracket(n, q)

    def test_pq_bracket_values(self):
        assert pq_bracket(3, 2, 3) == 19
        assert pq_bracket(3, 2, 2) == 12
        assert pq_bracket(0, 2, 2) == 0

    @given(integers(0, 20), positive_rationals(), positive_rationals())
    def test_pq_bracket_symmetry_and_q_limit(self, n, p, q):
        assert pq_bracket(n, p, q) == pq_bracket(n, q, p)
        assert pq_bracket(n, 1, q) == q_bracket(n, q)

    @given(integers(1, 20), positive_rationals())
    def test_brackets_increase_with_level(self, n, q):
        assert q_bracket(n, q) > q_bracket(n - 1, q)

    def test_q_factorial_and_binomial(self):
        assert q_factorial(0, 2) == 1
        assert q_factorial(3, 2) == 1 * 3 * 7
        assert q_binomial(4, 2, 2) == 35
        assert q_binomial(4, 2, 1) == 6
        assert q_binomial(3, 5, 2) == 0

    @given(integers(0, 8), integers(0, 8), positive_rationals())
    def test_binomial_symmetry(self, k, m, q):
        if m <= k:
            assert q_binomial(k, m, q) == q_binomial(k, k - m, q)


class TestBracketKind:

    def test_values(self):
        assert Classical().value(4) == 4
        assert QBracket(Fraction(1, 2)).value(2) == Fraction(3, 2)
        assert QBracket(Fraction(2)).value(3) == 7
        assert PQBracket(Fraction(2), Fraction(3)).value(3) == 19

    def test_round_trip(self):
        for kind in (Classical(), QBracket(Fraction(1, 2)), PQBracket(Fraction(2), Fraction(3))):
            assert BracketKind.from_dict(kind.to_dict()) == kind

    def test_pq_wire_keys(self):
        assert PQBracket(Fraction(2), Fraction(3)).to_dict() == {"bracket": "pq", "q": "3", "p": "2"}

    def test_unknown_bracket(self):
        with pytest.raises(DomainError):
            BracketKind.from_dict({"bracket": "quantum"})

    def test_nonpositive_parameter(self):
        with pytest.raises(DomainError):
            QBracket(Fraction(0))
