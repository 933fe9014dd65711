import numpy as np
import pytest
from pydantic import ValidationError

import search.vns as vns
from model.errors import InputError
from model.instance import WeightedGraph, is_feasible, max_color
from model.state import SearchState
from search.oracle import minimum_span
from search.vns import (
    SolverConfig,
    compare,
    find_best_recoloring,
    init_solution,
    make_config,
    order_vertices,
    parse_criteria,
    shake,
    solve,
    vertex_order,
    vnd,
)

from tests.conftest import random_graph


def _config(**options):
    options.setdefault("time_max", None)
    options.setdefault("max_iters", 200)
    return make_config(**options)


class TestConfig:
    def test_defaults(self):
        config = SolverConfig()
        assert (config.k_min, config.k_max, config.p_move) == (2, 20, 0.5)
        assert config.criteria == "111"

    def test_criteria_bits(self):
        assert parse_criteria("101") == (True, False, True)
        assert make_config(criteria_mask="010").criteria_mask == (False, True, False)
        with pytest.raises(InputError):
            parse_criteria("12x")

    @pytest.mark.parametrize(
        "options",
        [{"k_min": 5, "k_max": 2}, {"p_move": 1.5}, {"criteria_mask": "11"}, {"greedy_order": "dsatur"}],
    )
    def test_invalid_options(self, options):
        with pytest.raises(InputError, match="invalid solver config"):
            make_config(**options)

    def test_needs_a_stopping_rule(self):
        with pytest.raises(ValidationError):
            SolverConfig(time_max=None, max_iters=None)


class TestInitAndShake:
    def test_init_collapses_to_one_color(self, rng):
        assert init_solution(5, 2, rng).tolist() == [1] * 5

    def test_init_range(self, rng):
        colors = init_solution(100, 10, rng)
        assert colors.min() >= 1 and colors.max() <= 9

    def test_init_is_seeded(self):
        first = init_solution(50, 10, np.random.Generator(np.random.PCG64(7)))
        second = init_solution(50, 10, np.random.Generator(np.random.PCG64(7)))
        assert np.array_equal(first, second)

    def test_hamming_distance(self, rng):
        nc = 6
        for _ in range(10_000):
            n = int(rng.integers(1, 12))
            x = rng.integers(1, nc + 1, size=n)
            k = int(rng.integers(1, 15))
            shaken = shake(x, k, nc, rng)
            changed = shaken != x
            assert changed.sum() == min(k, n)
            assert shaken.min() >= 1 and shaken.max() <= nc

    def test_shake_does_not_mutate_input(self, rng):
        x = np.array([1, 2, 3])
        shake(x, 3, 3, rng)
        assert x.tolist() == [1, 2, 3]

    def test_single_color_and_bad_k(self, rng):
        assert shake(np.ones(4, dtype=np.int64), 2, 1, rng).tolist() == [1, 1, 1, 1]
        with pytest.raises(InputError):
            shake(np.ones(4, dtype=np.int64), 0, 3, rng)

    def test_uniform_vertex_selection(self, rng):
        counts = np.zeros(10, dtype=int)
        x = np.ones(10, dtype=np.int64)
        for _ in range(10_000):
            counts += shake(x, 1, 5, rng) != x
        expected = 1000
        chi_square = float(((counts - expected) ** 2 / expected).sum())
        # 9 degrees of freedom, 0.999 quantile
        assert chi_square < 27.88


class TestOrdering:
    def test_conflicts_then_middle_distance(self):
        order = vertex_order(
            conflicts=np.array([5, 2, 5]),
            colors=np.array([5, 1, 9]),
            nc=10,
            weight_sum=np.zeros(3, dtype=np.int64),
            max_incident=np.zeros(3, dtype=np.int64),
            mask=(True, True, True),
        )
        assert order.tolist() == [1, 3, 2]

    def test_no_criteria_is_identity(self):
        order = vertex_order(np.array([1, 9, 4]), np.array([3, 2, 1]), 4, np.array([1, 2, 3]),
                             np.array([3, 2, 1]), (False, False, False))
        assert order.tolist() == [1, 2, 3]

    def test_geometric_mean_tie_falls_back_to_id(self):
        order = vertex_order(np.array([0, 0]), np.array([1, 1]), 2, np.array([9, 4]),
                             np.array([4, 9]), (False, False, True))
        assert order.tolist() == [1, 2]

    def test_conflicts_only_is_stable_descending(self, rng):
        conflicts = rng.integers(0, 4, size=30)
        order = vertex_order(conflicts, np.ones(30), 3, np.zeros(30), np.zeros(30), (True, False, False))
        expected = sorted(range(1, 31), key=lambda v: (-conflicts[v - 1], v))
        assert order.tolist() == expected

    def test_order_from_state_is_a_permutation(self, rng):
        graph = random_graph(rng, 15, 0.5, 5)
        state = SearchState(graph, rng.integers(1, 6, size=15), 5)
        assert sorted(order_vertices(state, (True, True, True)).tolist()) == list(range(1, 16))


class TestRecoloring:
    def test_isolated_vertex_takes_color_one(self):
        state = SearchState(WeightedGraph(2, []), [3, 2], 4)
        assert find_best_recoloring(state, 1) == (1, 0)

    def test_single_edge(self):
        state = SearchState(WeightedGraph(2, [(1, 2, 5)]), [1, 1], 6)
        # penalty goes from 5 to 0
        assert find_best_recoloring(state, 2) == (6, -5)

    def test_delta_never_positive(self, rng):
        graph = random_graph(rng, 12, 0.5, 5)
        state = SearchState(graph, rng.integers(1, 7, size=12), 6)
        for v in range(1, 13):
            assert find_best_recoloring(state, v)[1] <= 0


class TestCompare:
    def _state(self, graph, colors, nc):
        return SearchState(graph, colors, nc)

    def test_penalty_decides(self, rng):
        graph = WeightedGraph(2, [(1, 2, 8)])
        low = self._state(graph, [1, 6], 6)      # penalty 3
        high = self._state(graph, [1, 2], 6)     # penalty 7
        assert compare(low, high, 0.5, rng)
        assert not compare(high, low, 0.5, rng)

    def test_fewer_colors_win(self, rng):
        graph = WeightedGraph(2, [(1, 2, 8)])
        assert compare(self._state(graph, [1, 2], 5), self._state(graph, [1, 6], 6), 0.0, rng)
        assert not compare(self._state(graph, [1, 6], 6), self._state(graph, [1, 2], 5), 1.0, rng)

    def test_ties_accepted_with_p_move(self, rng):
        graph = WeightedGraph(2, [(1, 2, 3)])
        a = self._state(graph, [1, 2], 4)
        b = self._state(graph, [2, 3], 4)
        rate = sum(compare(a, b, 0.5, rng) for _ in range(10_000)) / 10_000
        assert abs(rate - 0.5) < 0.02


class TestVnd:
    def test_single_edge_cannot_fit_three_colors(self, rng):
        reported = []
        state = SearchState(WeightedGraph(2, [(1, 2, 3)]), [1, 1], 3)
        result = vnd(state, None, _config(), lambda x, k: reported.append(k), rng)
        assert result.total_penalty == 1
        assert reported == []

    def test_feasible_input_is_reported_and_nc_drops(self, rng):
        reported = []
        state = SearchState(WeightedGraph(3, [(1, 2, 1)]), [1, 3, 3], 3)
        result = vnd(state, None, _config(), lambda x, k: reported.append((x.copy(), k)), rng)
        assert reported[0][1] == 3
        assert result.nc < 3
        spans = [k for _, k in reported]
        assert spans == sorted(spans, reverse=True)
        for colors, k in reported:
            assert max_color(colors) == k

    def test_reaches_feasibility_when_oracle_says_it_exists(self):
        rng = np.random.Generator(np.random.PCG64(3))
        for _ in range(15):
            graph = random_graph(rng, int(rng.integers(3, 8)), 0.6, 3)
            optimum = minimum_span(graph, 40)
            hits = []
            for _ in range(50):
                state = SearchState(graph, rng.integers(1, optimum + 3, size=graph.n), optimum + 2)
                vnd(state, None, _config(), lambda x, k: hits.append(k), rng)
                if hits:
                    break
            assert hits


class TestSolve:
    def test_edgeless_graph(self):
        result = solve(WeightedGraph(7, []), _config())
        assert result.k_star == 1
        assert result.best_coloring.tolist() == [1] * 7
        assert result.iterations == 0

    def test_zero_time_limit_returns_greedy(self, rng):
        graph = random_graph(rng, 20, 0.5, 5)
        result = solve(graph, make_config(time_max=0))
        assert result.k_star == result.greedy_span
        assert result.iterations == 0

    def test_result_contract(self, rng):
        graph = random_graph(rng, 25, 0.4, 6)
        seen = []
        result = solve(graph, _config(rng_seed=11), on_improvement=lambda x, k: seen.append((x.copy(), k)))
        assert is_feasible(graph, result.best_coloring)
        assert max_color(result.best_coloring) == result.k_star <= result.greedy_span
        spans = [k for _, k in seen]
        assert spans[0] == result.greedy_span
        assert all(a > b for a, b in zip(spans, spans[1:]))
        assert all(is_feasible(graph, x) for x, _ in seen)
        assert [k for _, k in result.trace] == spans

    def test_seeded_runs_are_reproducible(self, rng):
        graph = random_graph(rng, 30, 0.3, 6)
        first = solve(graph, _config(rng_seed=5, max_iters=150))
        second = solve(graph, _config(rng_seed=5, max_iters=150))
        assert first.k_star == second.k_star
        assert first.iterations == second.iterations
        assert np.array_equal(first.best_coloring, second.best_coloring)

    def test_neighborhood_cycles_between_bounds(self, rng, monkeypatch):
        graph = random_graph(rng, 30, 0.5, 8)
        ks = []
        original = vns.shake

        def recording_shake(x, k, nc, generator):
            ks.append(k)
            return original(x, k, nc, generator)

        monkeypatch.setattr(vns, "shake", recording_shake)
        solve(graph, _config(k_min=2, k_max=5, max_iters=300))
        assert all(2 <= k <= 5 for k in ks)
        for a, b in zip(ks, ks[1:]):
            assert b in (a, a + 1) or (a == 5 and b == 2)

    def test_start_k_below_lower_bound_is_clamped(self, triangle):
        # lower bound 3, optimum 5: the search starts at 3 colors and never beats greedy
        result = solve(triangle, _config(start_k=1, max_iters=50))
        assert result.k_star == result.greedy_span == 5
        assert is_feasible(triangle, result.best_coloring)

    def test_matches_exhaustive_minimum_on_small_graphs(self):
        rng = np.random.Generator(np.random.PCG64(2024))
        misses = 0
        trials = 30
        for seed in range(trials):
            graph = random_graph(rng, int(rng.integers(2, 9)), float(rng.uniform(0.3, 0.8)), 4)
            result = solve(graph, make_config(time_max=2, max_iters=500, rng_seed=seed))
            optimum = minimum_span(graph, result.greedy_span)
            assert result.k_star >= optimum
            misses += result.k_star != optimum
        assert misses <= trials * 0.05
