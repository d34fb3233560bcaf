# test/test_graph.py
# Connexité, composantes, persistance des arêtes et propriété H

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hk_consensus.core.dynamics import sync_step
from hk_consensus.core.exceptions import DomainError, IndexOutOfRangeError
from hk_consensus.core.graph import (
    EdgeCounts, OpinionGraphView, components, edge_counts, edge_persists_condition,
    h_pairs, h_statement, is_connected, is_connected_bruteforce, max_gap, summarize
)
from hk_consensus.core.params import ArithmeticMode, ModelParams
from hk_consensus.core.profile import NeighborWindow, OpinionProfile

CONNECTIVITY_CASES = [
    ([0.0, 0.4, 0.8], 0.5, True),
    ([0.0, 0.6], 0.5, False),
    ([0.7], 0.1, True),
]


class TestConnectivity:
    @pytest.mark.parametrize("values, epsilon, expected", CONNECTIVITY_CASES)
    def test_gap_criterion(self, profile_of, values, epsilon, expected):
        assert is_connected(profile_of(values), epsilon) is expected

    @pytest.mark.parametrize("values, epsilon, expected", CONNECTIVITY_CASES)
    def test_bruteforce_agrees(self, profile_of, values, epsilon, expected):
        assert is_connected_bruteforce(profile_of(values), epsilon) is expected

    @settings(max_examples=200, deadline=None)
    @given(
        values=st.lists(st.fractions(min_value=0, max_value=1, max_denominator=12), min_size=1, max_size=20),
        epsilon=st.fractions(min_value=Fraction(1, 12), max_value=1, max_denominator=12),
    )
    def test_gap_criterion_matches_graph_search(self, values, epsilon):
        profile = OpinionProfile.from_values(values, ArithmeticMode.RATIONAL)
        assert is_connected(profile, epsilon) == is_connected_bruteforce(profile, epsilon)

    @settings(max_examples=100, deadline=None)
    @given(
        values=st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=2, max_size=20),
        epsilon=st.floats(min_value=0.01, max_value=0.5),
    )
    def test_disconnection_persists(self, values, epsilon):
        profile = OpinionProfile.from_values(values)
        if not is_connected(profile, epsilon):
            assert not is_connected(sync_step(profile, ModelParams(epsilon)), epsilon)


class TestComponents:
    def test_two_singletons(self, profile_of):
        assert components(profile_of([0.0, 0.6]), 0.5) == [(0, 0), (1, 1)]

    def test_single_component(self, three_agents):
        assert components(three_agents, 0.5) == [(0, 2)]

    def test_singleton_profile(self, profile_of):
        assert components(profile_of([0.3]), 0.1) == [(0, 0)]

    def test_exact_components(self, profile_of):
        profile = profile_of(["0", "0.1", "0.5", "0.55", "1"], ArithmeticMode.RATIONAL)
        assert components(profile, Fraction(1, 10)) == [(0, 1), (2, 3), (4, 4)]

    def test_summary(self, profile_of):
        connected, count, gap = summarize(profile_of([0.0, 0.6]), 0.5)
        assert (connected, count) == (False, 2)
        assert gap == pytest.approx(0.6)
        assert max_gap(profile_of([0.2])) == 0.0


class TestGraphView:
    def test_view(self, three_agents):
        view = OpinionGraphView(three_agents, 0.5)
        assert view.has_edge(0, 1)
        assert not view.has_edge(0, 2)
        assert view.window(1) == NeighborWindow(0, 2)
        assert view.window(0).size == 2
        assert view.is_connected()
        assert view.components() == [(0, 2)]
        assert view.n == 3

    def test_view_aligns_epsilon(self, three_agents_exact):
        view = OpinionGraphView(three_agents_exact, 0.5)
        assert view.epsilon == Fraction(1, 2)

    def test_view_index_checked(self, three_agents):
        with pytest.raises(IndexOutOfRangeError):
            OpinionGraphView(three_agents, 0.5).has_edge(0, 5)


class TestEdgeCounts:
    def test_overlapping_windows(self, profile_of):
        profile = profile_of([0.0, 0.1, 0.2, 0.3, 0.4])
        assert edge_counts(profile, 0, 1, 0.2) == EdgeCounts(only_i=0, only_j=1, shared=3)

    def test_identical_neighborhoods(self, profile_of):
        profile = profile_of([0.6] * 4)
        assert edge_counts(profile, 1, 3, 0.1) == EdgeCounts(only_i=0, only_j=0, shared=4)

    def test_duplicate_values(self, profile_of):
        profile = profile_of([0.0, 0.2, 0.4, 0.4])
        assert edge_counts(profile, 0, 1, 0.2) == EdgeCounts(only_i=0, only_j=2, shared=2)

    def test_same_agent_rejected(self, three_agents):
        with pytest.raises(DomainError):
            edge_counts(three_agents, 1, 1, 0.5)


class TestEdgePersistence:
    def test_condition_holds_and_edge_survives(self, profile_of):
        profile = profile_of([0.0, 0.1, 0.2, 0.3, 0.4])
        assert edge_persists_condition(profile, 0, 1, 0.2)
        after = sync_step(profile, ModelParams(0.2))
        assert after[1] - after[0] <= 0.2
        assert after[0] == pytest.approx(0.1)
        assert after[1] == pytest.approx(0.15)

    def test_condition_fails(self, profile_of):
        assert not edge_persists_condition(profile_of([0.0, 0.2, 0.4, 0.4]), 0, 1, 0.2)

    def test_all_equal(self, profile_of):
        assert edge_persists_condition(profile_of([0.5] * 3), 0, 2, 0.1)

    def test_non_edge_rejected(self, profile_of):
        with pytest.raises(DomainError):
            edge_persists_condition(profile_of([0.0, 0.6]), 0, 1, 0.5)


class TestHStatement:
    def test_pairs_use_one_based_median(self):
        assert h_pairs(5) == [(0, 2), (2, 4)]
        assert h_pairs(4) == [(0, 1), (1, 3)]

    def test_clustered_profile(self, profile_of):
        assert h_statement(profile_of([0.4, 0.45, 0.5, 0.55, 0.6]), 0.5)

    def test_spread_profile(self, profile_of):
        assert not h_statement(profile_of([0.0, 0.25, 0.5, 0.75, 1.0]), 0.5)

    def test_single_agent(self, profile_of):
        assert h_statement(profile_of([0.5]), 0.1)

    def test_missing_edge(self, profile_of):
        assert not h_statement(profile_of([0.0, 0.5, 1.0]), 0.3)
