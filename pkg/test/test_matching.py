# test/test_matching.py
# Décomposition par appariement et borne de déconnexion

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hk_consensus.core.exceptions import DomainError
from hk_consensus.core.verification import disconnect_bound, disconnect_probability, matching_decomposition
from hk_consensus.core.verification.matching import MatchingTerm, linear_combination


def _zero_sum(values):
    """Complète une liste d'entiers par son opposé pour obtenir une somme nulle."""
    return [Fraction(v) for v in values] + [Fraction(-sum(values))]


class TestMatchingDecomposition:
    def test_single_pair(self):
        decomposition = matching_decomposition([1, -1], [0.2, 0.7])
        assert decomposition.terms == [MatchingTerm(1, 0, 1)]
        assert decomposition.total_positive_mass == 1

    def test_one_positive_two_negatives(self):
        xs = [Fraction(1, 2), Fraction(1, 5), Fraction(3, 4)]
        decomposition = matching_decomposition([2, -1, -1], xs)
        assert decomposition.terms == [MatchingTerm(1, 0, 1), MatchingTerm(1, 0, 2)]
        assert decomposition.total_positive_mass == 2
        assert decomposition.reconstruct(xs) == 2 * xs[0] - xs[1] - xs[2]

    def test_all_zero(self):
        decomposition = matching_decomposition([0, 0], [0.1, 0.9])
        assert decomposition.terms == []
        assert decomposition.total_positive_mass == 0

    def test_float_coefficients(self):
        lambdas = [0.5, 0.25, -0.75]
        xs = [0.1, 0.4, 0.9]
        decomposition = matching_decomposition(lambdas, xs)
        assert not decomposition.exact
        assert decomposition.mass() == pytest.approx(0.75)
        assert decomposition.reconstruct(xs) == pytest.approx(linear_combination(lambdas, xs), abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            matching_decomposition([1, -1], [0.5])

    @pytest.mark.parametrize("lambdas", [[1, -0.5], [Fraction(1, 3), Fraction(-1, 4)]])
    def test_nonzero_sum(self, lambdas):
        with pytest.raises(DomainError):
            matching_decomposition(lambdas, [0.1, 0.2])

    @settings(max_examples=200, deadline=None)
    @given(
        values=st.lists(st.integers(min_value=-20, max_value=20), min_size=1, max_size=12),
        data=st.data(),
    )
    def test_identity_holds_exactly(self, values, data):
        lambdas = _zero_sum(values)
        xs = data.draw(st.lists(
            st.fractions(min_value=0, max_value=1, max_denominator=50),
            min_size=len(lambdas), max_size=len(lambdas),
        ))
        decomposition = matching_decomposition(lambdas, xs)
        assert decomposition.reconstruct(xs) == linear_combination(lambdas, xs)
        assert decomposition.mass() == decomposition.total_positive_mass
        assert all(term.coefficient > 0 for term in decomposition.terms)
        assert all(lambdas[t.positive_index] > 0 > lambdas[t.negative_index] for t in decomposition.terms)
        assert len(decomposition.terms) <= len(lambdas)


class TestDisconnectBound:
    def test_reference_value(self):
        assert disconnect_bound(10, 0.3) == pytest.approx(0.05764801)

    def test_two_agents(self):
        assert disconnect_bound(2, 0.5) == 1.0

    def test_exact_epsilon(self):
        assert disconnect_bound(4, Fraction(1, 2)) == Fraction(1, 4)

    @pytest.mark.parametrize("n, epsilon", [(1, 0.5), (10, 0.0), (10, 1.0), (10, 1.5)])
    def test_domain(self, n, epsilon):
        with pytest.raises(DomainError):
            disconnect_bound(n, epsilon)

    def test_monotone(self):
        assert disconnect_bound(20, 0.3) < disconnect_bound(10, 0.3)
        assert disconnect_bound(10, 0.4) < disconnect_bound(10, 0.3)


class TestDisconnectProbability:
    def test_two_agents(self):
        assert disconnect_probability(2, 0.5) == pytest.approx(0.25)
        assert disconnect_probability(2, Fraction(1, 2)) == Fraction(1, 4)

    def test_single_agent(self):
        assert disconnect_probability(1, 0.1) == 0

    def test_inclusion_exclusion(self):
        expected = 9 * 0.7 ** 10 - 36 * 0.4 ** 10 + 84 * 0.1 ** 10
        assert disconnect_probability(10, 0.3) == pytest.approx(expected)

    def test_exceeds_power_bound_at_moderate_n(self):
        assert disconnect_probability(10, 0.3) > disconnect_bound(10, 0.3)

    def test_large_epsilon(self):
        assert disconnect_probability(50, 1.0) == 0
