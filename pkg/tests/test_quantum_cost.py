"""
Tests for the closed-form QSearch cost model.
"""

import math
from decimal import ROUND_CEILING, Decimal, getcontext

import numpy as np
import pytest
from pydantic import ValidationError

from qflowbench.core.config import GATE_TIME_RECORD
from qflowbench.core.errors import CostModelError
from qflowbench.flow.dinic import dinic_max_flow
from qflowbench.flow.records import BfsPhaseRecord
from qflowbench.quantum.cost import (
    avg_success_probability,
    clamped_summands,
    compare_threshold,
    cost_estimate,
    cycle_model,
    cycles_per_iteration,
    expected_iterations_all,
    expected_iterations_one,
    failing_run_iterations,
    gate_count,
    k_max,
    m_k,
    phase_gate_count,
    qsearch_params,
    required_gate_time,
    s_max,
    theta_of,
)


def k_max_decimal(list_size):
    """ceil(log_{6/5}(L / (2 sqrt(L - 1)))) + 4 at 60 significant digits."""
    getcontext().prec = 60
    size = Decimal(list_size)
    ratio = size / (2 * (size - 1).sqrt())
    exponent = ratio.ln() / Decimal("1.2").ln()
    return int(exponent.to_integral_value(rounding=ROUND_CEILING)) + 4


def n_q_reference(list_size, marked):
    """Straight loop over the schedule, one round at a time."""
    theta = theta_of(list_size, marked)
    total, reach = 0.0, 1.0
    for k in range(1, k_max(list_size) + 1):
        m = m_k(list_size, k)
        total += reach * m / 2
        reach *= 1.0 - avg_success_probability(m, theta)
    return total


def phase(total_vertices, layers, sink_reached=True, index=0):
    return BfsPhaseRecord(
        phase_index=index,
        total_vertices=total_vertices,
        layer_sizes=tuple(layers),
        sink_reached=sink_reached,
        sink_level=len(layers) if sink_reached else None,
        bfs_wall_time=1000,
    )


class TestSchedule:
    """Tests for k_max, m_k and s_max."""

    @pytest.mark.parametrize("list_size, expected", [(2, 4), (100, 13), (300000, 35)])
    def test_k_max_examples(self, list_size, expected):
        """Test known round counts."""
        assert k_max(list_size) == expected

    @pytest.mark.parametrize("list_size", [3, 10, 11, 64, 1000, 12345, 300000, 10**9])
    def test_k_max_matches_high_precision_logarithm(self, list_size):
        """Test the integer evaluation against a 60-digit logarithm."""
        assert k_max(list_size) == k_max_decimal(list_size)

    def test_schedule_for_100(self):
        """Test the capped schedule for a 100-item list."""
        assert [m_k(100, k) for k in range(1, 14)] == [1, 1, 1, 2, 2, 2, 3, 4, 5, 6, 7, 8, 10]
        assert qsearch_params(100, 0).schedule == (1, 1, 1, 2, 2, 2, 3, 4, 5, 6, 7, 8, 10)

    def test_m_k_is_capped_by_sqrt(self):
        """Test the bound never exceeds floor(sqrt(L))."""
        assert m_k(10, 30) == 3
        assert m_k(2, 4) == 1

    @pytest.mark.parametrize("epsilon, expected", [(0.1, 3), (0.5, 1), (0.01, 5)])
    def test_s_max(self, epsilon, expected):
        """Test outer round counts."""
        assert s_max(epsilon) == expected

    @pytest.mark.parametrize("epsilon", [0.0, 1.0, -0.2, 1.5])
    def test_s_max_domain(self, epsilon):
        """Test epsilon outside (0, 1) is rejected."""
        with pytest.raises(CostModelError):
            s_max(epsilon)

    def test_domain_errors(self):
        """Test invalid list sizes and round indices."""
        with pytest.raises(CostModelError):
            k_max(1)
        with pytest.raises(CostModelError):
            m_k(10, 0)
        with pytest.raises(CostModelError):
            m_k(0, 1)


class TestAverageSuccessProbability:
    """Tests for the averaged Grover success probability."""

    @pytest.mark.parametrize("m", [0, 1, 5, 10, 99])
    def test_quarter_pi_is_exactly_half(self, m):
        """Test theta = pi/4 gives 1/2 with no rounding residue."""
        assert avg_success_probability(m, math.pi / 4) == 0.5

    @pytest.mark.parametrize("m", [0, 1, 7])
    def test_half_pi_is_one(self, m):
        """Test the degenerate branch when every item is marked."""
        assert avg_success_probability(m, math.pi / 2) == pytest.approx(1.0, abs=1e-15)

    def test_single_term(self):
        """Test m = 0 is just sin^2(theta)."""
        theta = theta_of(64, 4)
        assert avg_success_probability(0, theta) == pytest.approx(4 / 64, rel=1e-12)

    def test_closed_and_direct_forms_agree(self):
        """Test 10^4 random (m, theta) pairs on both branches."""
        rng = np.random.default_rng(12345)
        checked = 0
        while checked < 10_000:
            m = int(rng.integers(0, 1001))
            theta = float(rng.uniform(0.0, math.pi / 2))
            if theta == 0.0 or abs(math.sin(2 * theta)) < 1e-6:
                continue
            closed = avg_success_probability(m, theta, method="closed")
            direct = avg_success_probability(m, theta, method="direct")
            assert closed == pytest.approx(direct, abs=1e-9), (m, theta)
            assert 0.0 <= closed <= 1.0
            checked += 1

    @pytest.mark.parametrize(
        "m, theta, method",
        [(-1, 0.3, "auto"), (3, 0.0, "auto"), (3, 2.0, "auto"), (3, 0.3, "bogus")],
    )
    def test_invalid_arguments(self, m, theta, method):
        """Test arguments outside the domain."""
        with pytest.raises(CostModelError):
            avg_success_probability(m, theta, method=method)


class TestExpectedIterations:
    """Tests for n_Q and N_Q."""

    def test_two_items_one_marked(self):
        """Test n_Q(2, 1) = (1 + 1/2 + 1/4 + 1/8) / 2."""
        assert expected_iterations_one(2, 1) == pytest.approx(0.9375, abs=1e-15)

    @pytest.mark.parametrize("list_size", [2, 5, 64, 1000])
    def test_everything_marked(self, list_size):
        """Test the first attempt always succeeds when all items are marked."""
        assert expected_iterations_one(list_size, list_size) == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("list_size, marked", [(2, 1), (10, 3), (64, 1), (64, 16), (1000, 7), (4096, 1)])
    def test_matches_round_by_round_loop(self, list_size, marked):
        """Test the vectorized kernel against a scalar loop."""
        assert expected_iterations_one(list_size, marked) == pytest.approx(
            n_q_reference(list_size, marked), rel=1e-12
        )

    @pytest.mark.parametrize("list_size", [64, 256, 1024])
    def test_more_marked_items_are_found_sooner(self, list_size):
        """Test n_Q decreases in the number of marked items."""
        values = [expected_iterations_one(list_size, t) for t in (1, 2, 4, list_size // 4)]
        assert values == sorted(values, reverse=True)

    def test_all_of_nothing_is_zero(self):
        """Test N_Q(L, 0) = 0."""
        assert expected_iterations_all(50, 0) == 0.0

    @pytest.mark.parametrize("list_size", [2, 17, 300])
    def test_all_of_one_equals_one(self, list_size):
        """Test N_Q(L, 1) = n_Q(L, 1)."""
        assert expected_iterations_all(list_size, 1) == pytest.approx(expected_iterations_one(list_size, 1), rel=1e-12)

    @pytest.mark.parametrize("list_size, marked", [(10, 3), (64, 8), (200, 20), (5, 4)])
    def test_sequential_removal_recurrence(self, list_size, marked):
        """Test N_Q(L, t) = n_Q(L, t) + N_Q(L - 1, t - 1)."""
        expected = expected_iterations_one(list_size, marked) + expected_iterations_all(list_size - 1, marked - 1)
        assert expected_iterations_all(list_size, marked) == pytest.approx(expected, rel=1e-12)

    def test_one_item_tail_is_clamped(self):
        """Test N_Q(4, 4) sums four first-attempt successes, the last on a one-item list."""
        assert expected_iterations_all(4, 4) == pytest.approx(2.0, abs=1e-12)

    @pytest.mark.parametrize("list_size, marked, expected", [(4, 4, 1), (16, 16, 1), (16, 15, 0), (2, 1, 0), (10, 0, 0)])
    def test_clamped_summand_count(self, list_size, marked, expected):
        """Test only a search that empties the list has a one-item summand."""
        assert clamped_summands(list_size, marked) == expected

    def test_all_grows_with_marked(self):
        """Test N_Q increases in the number of marked items."""
        values = [expected_iterations_all(64, t) for t in (0, 1, 2, 4, 8, 16)]
        assert values == sorted(values)
        assert len(set(values)) == len(values)

    @pytest.mark.parametrize("list_size, marked", [(10, 0), (10, 11), (1, 1)])
    def test_one_domain(self, list_size, marked):
        """Test n_Q needs at least one marked item in a list of two or more."""
        with pytest.raises(CostModelError):
            expected_iterations_one(list_size, marked)

    def test_all_domain(self):
        """Test N_Q rejects more marked items than the list holds."""
        with pytest.raises(CostModelError):
            expected_iterations_all(10, 11)


class TestCycleModel:
    """Tests for the per-iteration cycle count."""

    @pytest.mark.parametrize("list_size", range(2, 200))
    def test_two_cycles_per_item(self, list_size):
        """Test an iteration takes exactly 2|L| cycles."""
        assert cycles_per_iteration(list_size) == 2 * list_size
        assert sum(cycle_model(list_size).breakdown) == 2 * list_size

    def test_breakdown(self):
        """Test oracle, Hadamard, multi-controlled Z and Hadamard."""
        assert cycle_model(10).breakdown == (1, 1, 17, 1)
        assert cycle_model(2).breakdown == (1, 1, 1, 1)

    def test_rejects_one_item(self):
        """Test a one-item list has no cycle model."""
        with pytest.raises(CostModelError):
            cycle_model(1)


class TestGateCount:
    """Tests for gate totals."""

    @pytest.mark.parametrize("list_size, marked", [(2, 1), (10, 3), (64, 64), (500, 12)])
    def test_gates_per_iteration(self, list_size, marked):
        """Test G_Q / N_Q = 2|L|."""
        ratio = gate_count(list_size, marked) / expected_iterations_all(list_size, marked)
        assert ratio == pytest.approx(2 * list_size, rel=1e-12)

    def test_smallest_instance(self):
        """Test G_Q(2, 1) = 4 * 0.9375."""
        assert gate_count(2, 1) == pytest.approx(3.75, abs=1e-12)

    def test_failing_run(self):
        """Test the iterations of a search that never succeeds."""
        assert failing_run_iterations(2, 0.1) == 6.0
        assert failing_run_iterations(100, 0.1) == 78.0

    def test_empty_layer(self):
        """Test an empty search is free unless strict."""
        assert gate_count(2, 0) == 0.0
        assert gate_count(2, 0, strict=True) == 24.0
        assert gate_count(100, 0, strict=True) == 200 * 78.0

    def test_phase_gate_count(self):
        """Test a single-layer phase and the terminal phase."""
        assert phase_gate_count(phase(2, [1])) == pytest.approx(3.75)
        assert phase_gate_count(phase(2, [1]), strict=True) == pytest.approx(27.75)
        terminal = phase(2, [], sink_reached=False, index=1)
        assert phase_gate_count(terminal) == 0.0
        assert phase_gate_count(terminal, strict=True) == 24.0

    def test_worked_example_phases(self, fig1_network):
        """Test each phase is the sum of its layer costs over all 11 vertices."""
        for record in dinic_max_flow(fig1_network).phases:
            expected = sum(gate_count(11, t) for t in record.layer_sizes)
            assert phase_gate_count(record) == pytest.approx(expected, rel=1e-12)

    def test_cost_estimate_breakdown(self):
        """Test the per-layer tuples of a strict estimate."""
        estimate = cost_estimate(phase(10, [2, 3, 1]), strict=True)
        assert estimate.layer_sizes == (2, 3, 1, 0)
        assert len(estimate.gates_per_layer) == 4
        assert estimate.gates_per_layer[1] == pytest.approx(gate_count(10, 3))
        assert estimate.gates_per_layer[-1] == pytest.approx(20 * failing_run_iterations(10))
        assert estimate.total_gates == pytest.approx(sum(estimate.gates_per_layer))
        assert estimate.N_q_per_layer[2] == pytest.approx(estimate.n_q_per_layer[2])
        assert estimate.clamped_summands == 0

    def test_cost_estimate_needs_two_vertices(self):
        """Test a record over a single vertex cannot be priced."""
        with pytest.raises(CostModelError):
            cost_estimate(phase(1, [], sink_reached=False))


class TestGateTime:
    """Tests for required gate time and the threshold verdict."""

    def test_required_gate_time(self):
        """Test tau = T_BFS / G_Q in seconds."""
        assert required_gate_time(1000, 3.75) == pytest.approx(1e-6 / 3.75)
        assert required_gate_time(5, 0.0) is None

    def test_wall_time_must_be_positive(self):
        """Test a zero BFS time is rejected."""
        with pytest.raises(CostModelError):
            required_gate_time(0, 10.0)

    @pytest.mark.parametrize(
        "tau, feasible, margin",
        [(9e-10, False, 6.5e-9 / 9e-10), (1e-14, False, 6.5e5), (GATE_TIME_RECORD, True, 1.0), (1e-6, True, 6.5e-3)],
    )
    def test_compare_threshold(self, tau, feasible, margin):
        """Test verdicts and margins against the record gate time."""
        verdict = compare_threshold(tau)
        assert verdict.feasible is feasible
        assert verdict.margin == pytest.approx(margin, rel=1e-12)
        assert verdict.label == ("feasible" if feasible else "infeasible")

    def test_custom_reference(self):
        """Test a user-supplied reference gate time."""
        assert compare_threshold(1e-9, reference=1e-10).feasible

    def test_verdict_is_frozen(self):
        """Test verdicts cannot be mutated."""
        verdict = compare_threshold(1e-9)
        with pytest.raises(ValidationError):
            verdict.feasible = True

    @pytest.mark.parametrize("tau", [0.0, -1e-9])
    def test_nonpositive_tau(self, tau):
        """Test a gate time must be positive."""
        with pytest.raises(CostModelError):
            compare_threshold(tau)


class TestQSearchParams:
    """Tests for qsearch_params."""

    def test_unmarked(self):
        """Test theta is undefined with nothing marked."""
        params = qsearch_params(100, 0)
        assert params.theta is None
        assert (params.s_max, params.k_max) == (3, 13)

    def test_quarter_marked(self):
        """Test sin^2(theta) = 1/4."""
        params = qsearch_params(100, 25, epsilon=0.01)
        assert params.theta == pytest.approx(math.pi / 6)
        assert params.s_max == 5
        assert float(params.lam) == 1.2
