"""Quantum cost model and QSearch / qBFS simulation."""

from qflowbench.quantum.cost import (
    LAMBDA,
    CostEstimate,
    CycleModel,
    QSearchParams,
    ThresholdVerdict,
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
)
from qflowbench.quantum.simulator import (
    MomentAccumulator,
    MonteCarloEstimate,
    QbfsTrace,
    TrialOutcome,
    emulate_qbfs,
    emulate_qbfs_levels,
    mc_expected_iterations,
    mc_expected_iterations_all,
    simulate_qsearch,
    simulate_qsearch_batch,
    success_probability,
)

__all__ = [
    "LAMBDA",
    "CostEstimate",
    "CycleModel",
    "QSearchParams",
    "ThresholdVerdict",
    "avg_success_probability",
    "clamped_summands",
    "compare_threshold",
    "cost_estimate",
    "cycle_model",
    "cycles_per_iteration",
    "expected_iterations_all",
    "expected_iterations_one",
    "failing_run_iterations",
    "gate_count",
    "k_max",
    "m_k",
    "phase_gate_count",
    "qsearch_params",
    "required_gate_time",
    "s_max",
    "MomentAccumulator",
    "MonteCarloEstimate",
    "QbfsTrace",
    "TrialOutcome",
    "emulate_qbfs",
    "emulate_qbfs_levels",
    "mc_expected_iterations",
    "mc_expected_iterations_all",
    "simulate_qsearch",
    "simulate_qsearch_batch",
    "success_probability",
]
