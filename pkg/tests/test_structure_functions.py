"""
Tests for structure functions, spectra and the q-commutator identity.
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis.strategies import integers, sampled_from

from core.errors import DomainError, UnsupportedFamilyError
from entities.structure_function import SequenceKind, Spectrum, StructureFunction
from solvers.spectra import q_commutator_coefficients, q_commutator_residuals
from tests.strategies import classical_oscillators, mu_vectors, positive_rationals


class TestEvaluation:

    def test_phi_examples(self):
        assert StructureFunction.classical(1).phi(2) == 6
        assert StructureFunction.classical().phi(7) == 7
        assert StructureFunction.q_deformed(2, "1/2").phi(2) == Fraction(15, 2)
        assert StructureFunction.pq_deformed(2, 3, 1).phi(3) == 19 + 19 ** 2

    def test_energy_examples(self):
        assert StructureFunction.classical().energy(3) == Fraction(7, 2)
        assert StructureFunction.classical(1, 1).energy(1) == Fraction(17, 2)

    @given(classical_oscillators(), integers(0, 40))
    def test_energy_is_mean_of_neighbours(self, sf, n):
        assert sf.energy(n) == (sf.phi(n) + sf.phi(n + 1)) / 2

    @given(classical_oscillators())
    def test_phi_vanishes_at_ground_level(self, sf):
        assert sf.phi(0) == 0
        assert sf.energy(0) == sf.phi(1) / 2

    def test_values_match_pointwise_evaluation(self):
        sf = StructureFunction.pq_deformed("1/2", 3, 2, 1)
        assert sf.values(SequenceKind.ENERGY, 6) == [sf.energy(n) for n in range(6)]
        assert sf.values(SequenceKind.PHI, 6) == [sf.phi(n) for n in range(6)]


class TestValidation:

    def test_negative_mu(self):
        with pytest.raises(DomainError):
            StructureFunction.classical(1, -1)

    def test_zero_senior_parameter(self):
        with pytest.raises(DomainError):
            StructureFunction.classical(1, 0)

    def test_interior_zero_is_allowed(self):
        assert StructureFunction.classical(0, 1).phi(2) == 2 + 8

    def test_nonpositive_deformation(self):
        with pytest.raises(DomainError):
            StructureFunction.q_deformed(0, 1)

    def test_sizes(self):
        assert StructureFunction.classical(1).basis_size == 3
        assert StructureFunction.q_deformed(2, 1).basis_size == 3
        assert StructureFunction.pq_deformed(2, 3, 1).basis_size == 5
        assert StructureFunction.pq_deformed(2, 3, 1, 1).basis_size == 9
        assert StructureFunction.classical(1, 1).poly_order == 3

    def test_base_collisions(self):
        assert StructureFunction.pq_deformed(4, 2, 1).has_base_collisions()
        assert not StructureFunction.pq_deformed(2, 3, 1).has_base_collisions()
        assert not StructureFunction.classical(1).has_base_collisions()


class TestSpectrum:

    def test_classical_quadratic(self):
        levels = StructureFunction.classical(1).spectrum(2).levels
        assert [(level.n, level.phi, level.energy) for level in levels] == [(0, 0, 1), (1, 2, 4), (2, 6, 9)]

    def test_n_max_must_be_positive(self):
        with pytest.raises(DomainError):
            StructureFunction.classical(1).spectrum(0)

    @given(classical_oscillators(), integers(1, 15))
    def test_admissible_spectra_are_monotone(self, sf, n_max):
        assert sf.spectrum(n_max).monotone

    @given(mu_vectors(0, 3), positive_rationals(), integers(1, 8))
    def test_degeneration_chain(self, mu, q, n_max):
        pq = StructureFunction.pq_deformed(1, q, *mu).spectrum(n_max)
        assert pq.levels == StructureFunction.q_deformed(q, *mu).spectrum(n_max).levels
        assert (StructureFunction.q_deformed(1, *mu).spectrum(n_max).levels
                == StructureFunction.classical(*mu).spectrum(n_max).levels)

    def test_rows_and_dict(self):
        spectrum = StructureFunction.classical(1).spectrum(1)
        assert spectrum.to_rows() == [["0", "0", "1"], ["1", "2", "4"]]
        assert Spectrum.from_dict(spectrum.to_dict()) == spectrum
        assert spectrum.to_dict()["monotone"] is True


class TestSerialization:

    def test_pq_wire_form(self):
        sf = StructureFunction.pq_deformed(2, 3, 1)
        assert sf.to_dict() == {"bracket": "pq", "q": "3", "p": "2", "mu": ["1"]}

    @given(mu_vectors(0, 4), sampled_from(["classical", "q", "pq"]), positive_rationals())
    def test_json_round_trip(self, mu, bracket, q):
        if bracket == "classical":
            sf = StructureFunction.classical(*mu)
        elif bracket == "q":
            sf = StructureFunction.q_deformed(q, *mu)
        else:
            sf = StructureFunction.pq_deformed(Fraction(3, 2), q, *mu)
        assert StructureFunction.from_json(sf.to_json()) == sf


class TestQCommutator:

    def test_harmonic_oscillator(self):
        assert q_commutator_coefficients(StructureFunction.classical(), 1) == [1, 0]
        assert q_commutator_coefficients(StructureFunction.classical(), Fraction(3, 2)) == [1, Fraction(-1, 2)]

    def test_quadratic_at_q_zero(self):
        assert q_commutator_coefficients(StructureFunction.classical(1), 0) == [2, 3, 1]

    def test_deformed_bracket_is_unsupported(self):
        with pytest.raises(UnsupportedFamilyError):
            q_commutator_coefficients(StructureFunction.q_deformed(2, 1), 1)

    @settings(max_examples=30)
    @given(classical_oscillators(0, 4), sampled_from([Fraction(0), Fraction(1), Fraction(2, 3), Fraction(-5, 2)]))
    def test_identity_holds(self, sf, q):
        report = q_commutator_residuals(sf, q)
        assert report.holds
        assert report.window == (0, sf.r + 2)

    def test_short_window_is_inconclusive(self):
        report = q_commutator_residuals(StructureFunction.classical(1, 1), 2, n_max=1)
        assert not report.holds
        assert report.inconclusive
