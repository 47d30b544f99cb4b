"""
Monte Carlo execution of the QSearch schedule and a classical qBFS emulation.

Measurements are Bernoulli draws with the exact Grover success probability
``sin^2((2j + 1) theta)``; no state vectors are simulated. Trials run in
fixed chunks, each on its own PCG64 stream, so estimates depend only on
``(arguments, seed)``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from qflowbench.core.errors import CostModelError
from qflowbench.core.generators import RNG_NAME, make_rng
from qflowbench.core.network import FlowNetwork, ResidualGraph, build_residual
from qflowbench.flow.records import UNREACHED, LevelAssignment
from qflowbench.quantum.cost import (
    DEFAULT_EPSILON,
    MIN_K_MAX,
    _check_epsilon,
    _m_k,
    k_max,
    s_max,
    theta_of,
)

logger = logging.getLogger(__name__)

CHUNK_TRIALS = 10_000
MIN_TRIALS = 1_000


def success_probability(j: int, theta: float) -> float:
    """Probability that measuring after ``j`` Grover iterations yields a marked item."""
    return math.sin((2 * j + 1) * theta) ** 2


@dataclass(frozen=True)
class TrialOutcome:
    """One QSearch run."""

    grover_iterations_used: int
    attempts: int
    succeeded: bool
    first_round_iterations: int = 0


@dataclass(frozen=True)
class _Schedule:
    list_size: int
    marked: int
    theta: float
    rounds: int
    attempts_per_round: int

    @classmethod
    def of(cls, list_size: int, marked: int, epsilon: float) -> "_Schedule":
        # One-item lists only occur as the tail of sequential removal.
        attempts = k_max(list_size) if list_size >= 2 else MIN_K_MAX
        theta = theta_of(list_size, marked) if marked else 0.0
        return cls(list_size, marked, theta, s_max(epsilon), attempts)

    def bound(self, exponent: int) -> int:
        return _m_k(self.list_size, exponent)


def _check_search(list_size: int, marked: int) -> None:
    if list_size < 2:
        raise CostModelError(f"list size must be at least 2, got {list_size}")
    if not 0 <= marked <= list_size:
        raise CostModelError(f"marked count must lie in [0, {list_size}], got {marked}")


def simulate_qsearch(
    list_size: int,
    marked: int,
    epsilon: float = DEFAULT_EPSILON,
    rng: Optional[np.random.Generator] = None,
) -> TrialOutcome:
    """
    Run the QSearch schedule once.

    The iteration bound starts at 6/5 and grows by 6/5 after every failed
    attempt, capped at ``sqrt(|L|)``; it is not reset between outer rounds,
    while the attempt counter restarts each round. Each attempt applies
    ``j`` iterations with ``j`` uniform in ``{0, ..., floor(m)}``.
    """
    _check_search(list_size, marked)
    schedule = _Schedule.of(list_size, marked, epsilon)
    rng = rng if rng is not None else make_rng(0)

    iterations = first_round = attempts = 0
    exponent = 1
    for round_index in range(schedule.rounds):
        for _ in range(schedule.attempts_per_round):
            j = int(rng.integers(0, schedule.bound(exponent) + 1))
            iterations += j
            attempts += 1
            if round_index == 0:
                first_round += j
            if marked and rng.random() < success_probability(j, schedule.theta):
                return TrialOutcome(iterations, attempts, True, first_round)
            exponent += 1
    return TrialOutcome(iterations, attempts, False, first_round)


@dataclass
class BatchOutcome:
    """Per-trial arrays of a vectorized batch."""

    iterations: np.ndarray
    first_round_iterations: np.ndarray
    attempts: np.ndarray
    succeeded: np.ndarray

    def __len__(self) -> int:
        return len(self.iterations)


def _run_batch(schedule: _Schedule, trials: int, rng: np.random.Generator) -> BatchOutcome:
    iterations = np.zeros(trials, dtype=np.int64)
    first_round = np.zeros(trials, dtype=np.int64)
    attempts = np.zeros(trials, dtype=np.int64)
    succeeded = np.zeros(trials, dtype=bool)
    active = np.ones(trials, dtype=bool)

    exponent = 1
    for round_index in range(schedule.rounds):
        for _ in range(schedule.attempts_per_round):
            j = rng.integers(0, schedule.bound(exponent) + 1, size=trials)
            draws = rng.random(trials)
            j = np.where(active, j, 0)
            iterations += j
            attempts += active
            if round_index == 0:
                first_round += j
            if schedule.marked:
                hit = active & (draws < np.sin((2 * j + 1) * schedule.theta) ** 2)
                succeeded |= hit
                active &= ~hit
            exponent += 1
            if not active.any():
                return BatchOutcome(iterations, first_round, attempts, succeeded)
    return BatchOutcome(iterations, first_round, attempts, succeeded)


def simulate_qsearch_batch(
    list_size: int,
    marked: int,
    epsilon: float,
    trials: int,
    rng: np.random.Generator,
) -> BatchOutcome:
    """``trials`` independent runs of :func:`simulate_qsearch`, vectorized over trials."""
    _check_search(list_size, marked)
    if trials < 1:
        raise CostModelError(f"trials must be positive, got {trials}")
    return _run_batch(_Schedule.of(list_size, marked, epsilon), trials, rng)


@dataclass
class MomentAccumulator:
    """Running count, mean and sum of squared deviations; chunks merge in any order."""

    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def add(self, values: np.ndarray) -> None:
        if len(values) == 0:
            return
        values = np.asarray(values, dtype=float)
        batch_mean = float(values.mean())
        batch = MomentAccumulator(len(values), batch_mean, float(np.sum((values - batch_mean) ** 2)))
        self.merge(batch)

    def merge(self, other: "MomentAccumulator") -> None:
        if other.count == 0:
            return
        total = self.count + other.count
        delta = other.mean - self.mean
        self.mean += delta * other.count / total
        self.m2 += other.m2 + delta * delta * self.count * other.count / total
        self.count = total

    @property
    def variance(self) -> float:
        return self.m2 / (self.count - 1) if self.count > 1 else 0.0

    @property
    def standard_error(self) -> float:
        return math.sqrt(self.variance / self.count) if self.count else float("nan")


@dataclass(frozen=True)
class MonteCarloEstimate:
    """
    Monte Carlo estimate of expected Grover iterations.

    ``mean`` averages successful trials only. ``first_round_mean`` counts
    the iterations spent inside the first outer round of every trial,
    failures included; its expectation is exactly the closed-form value.
    """

    mean: float
    standard_error: float
    success_rate: float
    first_round_mean: float
    first_round_standard_error: float
    trials: int
    seed: int
    rng: str = field(default=RNG_NAME)

    def relative_deviation(self, reference: float) -> float:
        return abs(self.mean - reference) / reference if reference else float("inf")


def _chunks(trials: int) -> list[int]:
    full, rest = divmod(trials, CHUNK_TRIALS)
    return [CHUNK_TRIALS] * full + ([rest] if rest else [])


def _check_mc(marked: int, trials: int) -> None:
    if marked < 1:
        raise CostModelError(f"Monte Carlo estimates need at least one marked item, got {marked}")
    if trials < MIN_TRIALS:
        raise CostModelError(f"need at least {MIN_TRIALS} trials, got {trials}")


def mc_expected_iterations(
    list_size: int,
    marked: int,
    epsilon: float = DEFAULT_EPSILON,
    trials: int = 100_000,
    seed: int = 0,
) -> MonteCarloEstimate:
    """Estimate the iterations to find one marked item."""
    _check_search(list_size, marked)
    _check_mc(marked, trials)
    schedule = _Schedule.of(list_size, marked, epsilon)

    successful, first_round = MomentAccumulator(), MomentAccumulator()
    successes = 0
    for chunk, size in enumerate(_chunks(trials)):
        batch = _run_batch(schedule, size, make_rng(seed, chunk))
        successful.add(batch.iterations[batch.succeeded])
        first_round.add(batch.first_round_iterations)
        successes += int(batch.succeeded.sum())
        logger.debug("chunk %d: %d trials, %d successes", chunk, size, int(batch.succeeded.sum()))

    return MonteCarloEstimate(
        mean=successful.mean,
        standard_error=successful.standard_error,
        success_rate=successes / trials,
        first_round_mean=first_round.mean,
        first_round_standard_error=first_round.standard_error,
        trials=trials,
        seed=seed,
    )


def _sequential_removal(
    list_size: int,
    marked: int,
    epsilon: float,
    trials: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    total = np.zeros(trials, dtype=np.int64)
    first_round = np.zeros(trials, dtype=np.int64)
    for offset in range(marked):
        schedule = _Schedule.of(list_size - offset, marked - offset, epsilon)
        batch = _run_batch(schedule, trials, rng)
        total += batch.iterations
        first_round += batch.first_round_iterations

        # A stage that exhausts its rounds is rerun until the item is found.
        pending = np.flatnonzero(~batch.succeeded)
        while len(pending):
            retry = _run_batch(schedule, len(pending), rng)
            total[pending] += retry.iterations
            pending = pending[~retry.succeeded]
    return total, first_round


def mc_expected_iterations_all(
    list_size: int,
    marked: int,
    epsilon: float = DEFAULT_EPSILON,
    trials: int = 100_000,
    seed: int = 0,
) -> MonteCarloEstimate:
    """
    Estimate the iterations to find all marked items by sequential removal.

    Each stage searches ``(|L| - i, t - i)`` after ``i`` items were found.
    ``first_round_mean`` sums each stage's first-round iterations and
    estimates ``N_Q`` without bias; ``mean`` includes retries.
    """
    _check_search(list_size, marked)
    _check_mc(marked, trials)

    totals, first_round = MomentAccumulator(), MomentAccumulator()
    for chunk, size in enumerate(_chunks(trials)):
        total, first = _sequential_removal(list_size, marked, epsilon, size, make_rng(seed, chunk))
        totals.add(total)
        first_round.add(first)
        logger.debug("chunk %d: %d sequential-removal trials", chunk, size)

    return MonteCarloEstimate(
        mean=totals.mean,
        standard_error=totals.standard_error,
        success_rate=1.0,
        first_round_mean=first_round.mean,
        first_round_standard_error=first_round.standard_error,
        trials=trials,
        seed=seed,
    )


@dataclass(frozen=True)
class QbfsTrace:
    """Levels found by the emulated qBFS and the order vertices were discovered in."""

    levels: LevelAssignment
    discovery_order: tuple[int, ...]
    epsilon: float = DEFAULT_EPSILON


def emulate_qbfs(
    graph: Union[FlowNetwork, ResidualGraph],
    source: Optional[int] = None,
    epsilon: float = DEFAULT_EPSILON,
    rng: Optional[np.random.Generator] = None,
) -> QbfsTrace:
    """
    Breadth-first search whose neighbour discovery mimics repeated QSearch.

    For the dequeued vertex, every undiscovered head of a positive-residual
    arc is marked; a successful search returns a uniformly random marked
    vertex, which is levelled, enqueued and unmarked until none remain.
    Searches are assumed to succeed; ``epsilon`` is the failure bound of
    the QSearch being emulated and is recorded on the trace for pricing.
    """
    _check_epsilon(epsilon)
    residual = build_residual(graph) if isinstance(graph, FlowNetwork) else graph
    source = residual.source if source is None else source
    rng = rng if rng is not None else make_rng(0)

    levels = [UNREACHED] * (residual.vertex_count + 1)
    levels[source] = 0
    order = [source]
    queue = [source]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        marked = sorted({residual.head[arc] for arc in residual.positive_arcs(u)})
        marked = [v for v in marked if levels[v] == UNREACHED]
        while marked:
            v = marked.pop(int(rng.integers(len(marked))))
            levels[v] = levels[u] + 1
            order.append(v)
            queue.append(v)

    return QbfsTrace(LevelAssignment(tuple(levels)), tuple(order), epsilon)


def emulate_qbfs_levels(
    graph: Union[FlowNetwork, ResidualGraph],
    source: Optional[int] = None,
    epsilon: float = DEFAULT_EPSILON,
    rng: Optional[np.random.Generator] = None,
) -> LevelAssignment:
    """Level function of :func:`emulate_qbfs`."""
    return emulate_qbfs(graph, source, epsilon, rng).levels
