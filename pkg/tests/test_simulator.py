"""
Tests for the QSearch Monte Carlo simulator and the qBFS emulation.
"""

import math

import numpy as np
import pytest

from qflowbench.core.errors import CostModelError
from qflowbench.core.generators import generate_random_network, make_rng
from qflowbench.core.network import FlowNetwork, build_residual
from qflowbench.flow.dinic import bfs_level
from qflowbench.quantum.cost import expected_iterations_all, expected_iterations_one, k_max, s_max
from qflowbench.quantum.simulator import (
    MomentAccumulator,
    MonteCarloEstimate,
    emulate_qbfs,
    emulate_qbfs_levels,
    mc_expected_iterations,
    mc_expected_iterations_all,
    simulate_qsearch,
    simulate_qsearch_batch,
    success_probability,
)

VALIDATION_SIZES = (16, 64, 256, 1024)


def one_grid():
    return sorted({(size, t) for size in VALIDATION_SIZES for t in (1, 2, 4, size // 4)})


class TestSuccessProbability:
    """Tests for the single-measurement success probability."""

    @pytest.mark.parametrize(
        "j, theta, expected",
        [(0, math.pi / 4, 0.5), (1, math.pi / 6, 1.0), (0, math.pi / 2, 1.0), (2, math.pi / 10, 1.0), (3, 0.0, 0.0)],
    )
    def test_table(self, j, theta, expected):
        """Test sin^2((2j + 1) theta) at a few exact angles."""
        assert success_probability(j, theta) == pytest.approx(expected, abs=1e-15)


class TestSimulateQSearch:
    """Tests for single QSearch runs."""

    def test_everything_marked(self):
        """Test the first measurement always succeeds."""
        for seed in range(20):
            outcome = simulate_qsearch(64, 64, rng=make_rng(seed))
            assert outcome.succeeded
            assert outcome.attempts == 1
            assert outcome.grover_iterations_used in (0, 1)
            assert outcome.first_round_iterations == outcome.grover_iterations_used

    def test_nothing_marked_exhausts_the_schedule(self):
        """Test every attempt of every round is spent."""
        outcome = simulate_qsearch(64, 0, rng=make_rng(3))
        assert not outcome.succeeded
        assert outcome.attempts == s_max(0.1) * k_max(64) == 36
        assert outcome.grover_iterations_used >= outcome.first_round_iterations

    def test_deterministic_per_seed(self):
        """Test the same stream gives the same run."""
        assert simulate_qsearch(256, 3, rng=make_rng(9)) == simulate_qsearch(256, 3, rng=make_rng(9))

    def test_attempts_are_bounded(self):
        """Test no run exceeds s_max * k_max attempts."""
        limit = s_max(0.1) * k_max(64)
        for seed in range(200):
            outcome = simulate_qsearch(64, 1, rng=make_rng(seed))
            assert 1 <= outcome.attempts <= limit
            if not outcome.succeeded:
                assert outcome.attempts == limit

    @pytest.mark.parametrize("list_size, marked", [(1, 1), (10, 11), (10, -1)])
    def test_invalid_arguments(self, list_size, marked):
        """Test searches outside the model's domain."""
        with pytest.raises(CostModelError):
            simulate_qsearch(list_size, marked)


class TestBatch:
    """Tests for the vectorized batch runner."""

    def test_shapes_and_bounds(self):
        """Test per-trial arrays respect the schedule."""
        batch = simulate_qsearch_batch(64, 4, 0.1, 5000, make_rng(3))
        assert len(batch) == 5000
        assert np.all(batch.attempts >= 1)
        assert np.all(batch.attempts <= 36)
        assert np.all(batch.iterations >= batch.first_round_iterations)
        assert np.all(batch.attempts[~batch.succeeded] == 36)
        assert batch.succeeded.mean() > 0.99

    def test_nothing_marked(self):
        """Test a batch with no marked items never succeeds."""
        batch = simulate_qsearch_batch(16, 0, 0.1, 100, make_rng(0))
        assert not batch.succeeded.any()
        assert np.all(batch.attempts == s_max(0.1) * k_max(16))

    def test_needs_trials(self):
        """Test an empty batch is rejected."""
        with pytest.raises(CostModelError):
            simulate_qsearch_batch(16, 1, 0.1, 0, make_rng(0))


class TestMomentAccumulator:
    """Tests for chunk-wise moments."""

    def test_chunks_match_numpy(self):
        """Test merged chunks give the pooled mean and sample variance."""
        values = make_rng(5).normal(3.0, 2.0, size=2500)
        accumulator = MomentAccumulator()
        for chunk in np.array_split(values, 7):
            accumulator.add(chunk)
        assert accumulator.count == 2500
        assert accumulator.mean == pytest.approx(values.mean(), rel=1e-12)
        assert accumulator.variance == pytest.approx(values.var(ddof=1), rel=1e-10)
        assert accumulator.standard_error == pytest.approx(values.std(ddof=1) / 50, rel=1e-10)

    def test_empty(self):
        """Test an empty accumulator has no standard error."""
        accumulator = MomentAccumulator()
        accumulator.add(np.array([]))
        assert accumulator.count == 0
        assert math.isnan(accumulator.standard_error)


class TestMonteCarlo:
    """Tests for the Monte Carlo estimators."""

    def test_everything_marked_mean(self):
        """Test the mean of Uniform{0, 1} iterations."""
        estimate = mc_expected_iterations(64, 64, trials=20_000, seed=0)
        assert estimate.success_rate == 1.0
        assert abs(estimate.mean - 0.5) <= 3 * estimate.standard_error
        assert estimate.rng == "numpy.PCG64"
        assert estimate.trials == 20_000

    def test_reproducible(self):
        """Test equal seeds give equal estimates and different seeds differ."""
        first = mc_expected_iterations(64, 4, trials=2000, seed=42)
        assert first == mc_expected_iterations(64, 4, trials=2000, seed=42)
        assert first != mc_expected_iterations(64, 4, trials=2000, seed=43)

    def test_partial_chunk(self):
        """Test trial counts that are not a multiple of the chunk size."""
        estimate = mc_expected_iterations(16, 2, trials=12_345, seed=1)
        assert estimate.trials == 12_345
        assert 0.99 < estimate.success_rate <= 1.0

    def test_standard_error_shrinks(self):
        """Test four times the trials halves the standard error."""
        small = mc_expected_iterations(64, 4, trials=10_000, seed=7)
        large = mc_expected_iterations(64, 4, trials=40_000, seed=7)
        assert 0.4 <= large.standard_error / small.standard_error <= 0.6

    @pytest.mark.parametrize(
        "list_size, marked, trials", [(64, 0, 10_000), (64, 4, 999), (1, 1, 10_000), (64, 65, 10_000)]
    )
    def test_invalid_arguments(self, list_size, marked, trials):
        """Test nothing-marked searches and too few trials are refused."""
        with pytest.raises(CostModelError):
            mc_expected_iterations(list_size, marked, trials=trials)

    def test_relative_deviation(self):
        """Test the deviation helper."""
        estimate = MonteCarloEstimate(
            mean=1.1,
            standard_error=0.01,
            success_rate=1.0,
            first_round_mean=1.0,
            first_round_standard_error=0.01,
            trials=1000,
            seed=0,
        )
        assert estimate.relative_deviation(1.0) == pytest.approx(0.1)
        assert estimate.relative_deviation(0.0) == math.inf

    def test_first_round_mean_is_unbiased(self):
        """Test the first-round mean against the closed form at a cheap point."""
        estimate = mc_expected_iterations(64, 4, trials=20_000, seed=3)
        assert abs(estimate.first_round_mean - expected_iterations_one(64, 4)) <= 3 * estimate.first_round_standard_error

    def test_all_with_one_marked_matches_one(self):
        """Test sequential removal of a single item replays the same streams."""
        one = mc_expected_iterations(64, 1, trials=5000, seed=11)
        everything = mc_expected_iterations_all(64, 1, trials=5000, seed=11)
        assert everything.first_round_mean == one.first_round_mean
        assert everything.success_rate == 1.0

    def test_all_grows_with_marked(self):
        """Test finding more items costs more iterations."""
        means = [mc_expected_iterations_all(64, t, trials=10_000, seed=2).first_round_mean for t in (1, 2, 4)]
        assert means == sorted(means)

    def test_all_agrees_with_closed_form(self):
        """Test N_Q(16, 3) at a cheap point."""
        estimate = mc_expected_iterations_all(16, 3, trials=20_000, seed=5)
        assert abs(estimate.first_round_mean - expected_iterations_all(16, 3)) <= 3 * estimate.first_round_standard_error

    @pytest.mark.slow
    @pytest.mark.parametrize("list_size, marked", one_grid())
    def test_one_validation_grid(self, list_size, marked):
        """Test n_Q against 10^5 trials on the validation grid."""
        estimate = mc_expected_iterations(list_size, marked, trials=100_000, seed=2024)
        expected = expected_iterations_one(list_size, marked)
        assert abs(estimate.first_round_mean - expected) <= 3 * estimate.first_round_standard_error

    @pytest.mark.slow
    @pytest.mark.parametrize("list_size", VALIDATION_SIZES)
    @pytest.mark.parametrize("marked", [1, 4, 8])
    def test_all_validation_grid(self, list_size, marked):
        """Test N_Q against 10^5 sequential-removal trials."""
        estimate = mc_expected_iterations_all(list_size, marked, trials=100_000, seed=2024)
        expected = expected_iterations_all(list_size, marked)
        assert abs(estimate.first_round_mean - expected) <= 3 * estimate.first_round_standard_error

    @pytest.mark.slow
    @pytest.mark.parametrize("list_size, marked", [(64, 4), (1024, 1)])
    def test_successful_mean_within_three_percent(self, list_size, marked):
        """Test the mean over successful runs tracks n_Q closely."""
        estimate = mc_expected_iterations(list_size, marked, trials=100_000, seed=0)
        assert estimate.relative_deviation(expected_iterations_one(list_size, marked)) <= 0.03

    @pytest.mark.slow
    def test_all_mean_within_three_percent(self):
        """Test the sequential-removal mean for eight items in 64."""
        estimate = mc_expected_iterations_all(64, 8, trials=100_000, seed=0)
        assert estimate.relative_deviation(expected_iterations_all(64, 8)) <= 0.03


class TestEmulateQbfs:
    """Tests for the qBFS emulation."""

    def test_levels_match_classical_bfs(self):
        """Test 100 networks times 10 seeds give the classical levels."""
        for index in range(100):
            net = generate_random_network(5 + index % 25, 3 * (5 + index % 25), 10, seed=index)
            expected, _ = bfs_level(build_residual(net), net.source)
            for seed in range(10):
                assert emulate_qbfs_levels(net, rng=make_rng(seed)) == expected

    def test_discovery_order(self):
        """Test the order starts at the source, is non-decreasing in level and covers every reached vertex."""
        net = generate_random_network(25, 80, 5, seed=4)
        trace = emulate_qbfs(net, rng=make_rng(1))
        level = trace.levels.levels
        assert trace.discovery_order[0] == net.source
        assert len(set(trace.discovery_order)) == len(trace.discovery_order)
        assert set(trace.discovery_order) == {v for v in net.vertices() if level[v] >= 0}
        assert [level[v] for v in trace.discovery_order] == sorted(level[v] for v in trace.discovery_order)

    def test_path_graph_has_one_order(self, path_network):
        """Test a path is discovered in path order for any seed."""
        for seed in range(5):
            assert emulate_qbfs(path_network, rng=make_rng(seed)).discovery_order == (1, 2, 3, 4)

    def test_residual_input_and_saturated_arcs(self):
        """Test saturated arcs are not followed."""
        residual = build_residual(FlowNetwork(3, 1, 3, [(1, 2, 4), (2, 3, 4)]))
        residual.push(2, 4)
        levels = emulate_qbfs_levels(residual, rng=make_rng(0))
        assert levels.of(2) == 1
        assert levels.of(3) is None

    def test_invalid_epsilon(self, path_network):
        """Test the failure bound must lie in (0, 1)."""
        with pytest.raises(CostModelError):
            emulate_qbfs(path_network, epsilon=1.0)

    def test_epsilon_recorded_on_trace(self, path_network):
        """Test the failure bound travels with the trace and leaves the levels alone."""
        default = emulate_qbfs(path_network, rng=make_rng(0))
        tight = emulate_qbfs(path_network, epsilon=0.01, rng=make_rng(0))
        assert default.epsilon == 0.1
        assert tight.epsilon == 0.01
        assert tight.levels == default.levels
