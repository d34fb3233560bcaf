# test/test_profile.py
# Profils canoniques, paramètres et fenêtres de voisinage

import time
from fractions import Fraction

import numpy as np
import pytest

from hk_consensus.core.exceptions import DomainError, IndexOutOfRangeError, UsageError
from hk_consensus.core.params import ArithmeticMode, ModelParams
from hk_consensus.core.profile import NeighborWindow, OpinionProfile, neighbors, window_bounds


class TestOpinionProfile:
    def test_from_values_sorts(self):
        profile = OpinionProfile.from_values([0.8, 0.0, 0.4])
        assert profile.values() == [0.0, 0.4, 0.8]
        assert profile.n == 3
        assert profile.time == 0

    def test_rational_reads_decimals_exactly(self):
        profile = OpinionProfile.from_values(["0.4", "1/3"], ArithmeticMode.RATIONAL)
        assert profile.values() == [Fraction(1, 3), Fraction(2, 5)]
        assert profile.is_exact

    def test_empty_profile_rejected(self):
        with pytest.raises(DomainError):
            OpinionProfile.from_values([])

    @pytest.mark.parametrize("bad", [[-0.1, 0.5], [0.5, 1.2], [float("nan")]])
    def test_out_of_range_rejected(self, bad):
        with pytest.raises(DomainError):
            OpinionProfile.from_values(bad)

    def test_unsorted_array_rejected(self):
        with pytest.raises(DomainError):
            OpinionProfile(np.array([0.5, 0.1]))

    def test_opinions_are_read_only(self):
        profile = OpinionProfile.from_values([0.1, 0.2])
        with pytest.raises(ValueError):
            profile.opinions[0] = 0.5


class TestModelParams:
    def test_defaults(self):
        params = ModelParams(0.5)
        assert params.mode is ArithmeticMode.FLOAT
        assert params.epsilon == 0.5
        assert not params.is_exact

    def test_rational_epsilon_from_float_literal(self):
        params = ModelParams(0.3, mode="exact-rational")
        assert params.epsilon == Fraction(3, 10)

    @pytest.mark.parametrize("epsilon", [0, -0.5])
    def test_epsilon_must_be_positive(self, epsilon):
        with pytest.raises(DomainError):
            ModelParams(epsilon)

    def test_convergence_tol_below_epsilon(self):
        with pytest.raises(DomainError):
            ModelParams(0.1, convergence_tol=0.1)

    def test_max_steps_positive(self):
        with pytest.raises(DomainError):
            ModelParams(0.5, max_steps=0)

    def test_unknown_mode(self):
        with pytest.raises(UsageError):
            ModelParams(0.5, mode="decimal")

    def test_with_epsilon_keeps_mode(self):
        params = ModelParams(Fraction(1, 2), mode=ArithmeticMode.RATIONAL).with_epsilon(0.25)
        assert params.epsilon == Fraction(1, 4)


class TestNeighbors:
    def test_window_of_first_agent(self, three_agents, half):
        assert neighbors(three_agents, 0, half) == NeighborWindow(0, 1)

    def test_boundary_tie_is_included(self, profile_of, half):
        assert neighbors(profile_of([0.0, 0.5]), 0, half) == NeighborWindow(0, 1)

    @pytest.mark.parametrize("i", [0, 1, 2])
    def test_large_epsilon_covers_everything(self, three_agents, i):
        window = neighbors(three_agents, i, ModelParams(1.0))
        assert (window.lo, window.hi) == (0, 2)
        assert window.size == 3

    def test_agent_in_own_window(self, profile_of):
        profile = profile_of([0.0, 0.3, 0.6, 0.9])
        params = ModelParams(0.01)
        for i in range(profile.n):
            window = neighbors(profile, i, params)
            assert window.lo <= i <= window.hi

    @pytest.mark.parametrize("i", [-1, 3])
    def test_index_out_of_range(self, three_agents, half, i):
        with pytest.raises(IndexOutOfRangeError):
            neighbors(three_agents, i, half)

    def test_rational_window(self, three_agents_exact, half_exact):
        assert neighbors(three_agents_exact, 1, half_exact) == NeighborWindow(0, 2)


class TestWindowBounds:
    def test_matches_single_agent_windows(self, profile_of):
        profile = profile_of([0.0, 0.1, 0.1, 0.35, 0.5, 0.9, 1.0])
        params = ModelParams(0.25)
        lo, hi = window_bounds(profile, params.epsilon)
        for i in range(profile.n):
            window = neighbors(profile, i, params)
            assert (lo[i], hi[i]) == (window.lo, window.hi)

    def test_rational_and_float_agree_on_grid(self, profile_of):
        values = ["0", "0.25", "0.5", "0.75", "1"]
        floats = window_bounds(profile_of(values), 0.25)
        exact = window_bounds(profile_of(values, ArithmeticMode.RATIONAL), Fraction(1, 4))
        assert floats[0].tolist() == exact[0].tolist()
        assert floats[1].tolist() == exact[1].tolist()

    @pytest.mark.parametrize("epsilon", [0.1, 0.3, 0.6])
    def test_duplicate_runs_match_predicate(self, epsilon):
        x = np.repeat([0.1, 0.2, 0.4, 0.7, 1.0], 300)
        lo, hi = window_bounds(OpinionProfile(x), epsilon)
        diffs = x[None, :] - x[:, None]
        assert hi.tolist() == (np.count_nonzero(diffs <= epsilon, axis=1) - 1).tolist()
        assert lo.tolist() == np.count_nonzero(diffs < -epsilon, axis=1).tolist()

    def test_long_tie_outside_window_is_linear(self):
        # 0.4 - 0.1 > 0.3 en flottant: toute la série de 0.4 est hors de la fenêtre du premier agent
        k = 200_000
        profile = OpinionProfile(np.array([0.1] + [0.4] * k))
        started = time.perf_counter()
        lo, hi = window_bounds(profile, 0.3)
        elapsed = time.perf_counter() - started
        assert (lo[0], hi[0]) == (0, 0)
        assert lo[1:].min() == 1 and hi[1:].min() == k
        assert elapsed < 2.0

    def test_long_tie_inside_window(self):
        k = 200_000
        profile = OpinionProfile(np.array([0.1] * k + [0.35]))
        lo, hi = window_bounds(profile, 0.25)
        assert hi[:k].min() == k
        assert lo[k] == 0
