"""
Closed-form QSearch cost model.

Prices one BFS layer as the expected number of Grover iterations needed to
find all of its ``t`` vertices in a list of ``|L|`` vertices, removing each
one once found, and converts iterations into gates at ``2|L|`` cycles per
iteration and one gate per cycle.

All evaluations are pure and memoized; the heavy kernel is vectorized over
every summand of the sequential-removal sum at once.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from qflowbench.core.config import GATE_TIME_RECORD
from qflowbench.core.errors import CostModelError
from qflowbench.flow.records import BfsPhaseRecord

logger = logging.getLogger(__name__)

LAMBDA = Fraction(6, 5)
"""Growth factor of the iteration-bound schedule."""

DEFAULT_EPSILON = 0.1

# |sin 2θ| below this switches the average success probability to the direct sum.
DEGENERATE_SIN_2THETA = 1e-9

# Outer-round count k_max uses for list sizes below its domain.
MIN_K_MAX = 4

_SNAP = 4 * np.finfo(float).eps

SuccessMethod = Literal["auto", "closed", "direct"]


def _check_list_size(list_size: int) -> None:
    if list_size < 2:
        raise CostModelError(f"list size must be at least 2, got {list_size}")


def _check_marked(list_size: int, marked: int, *, allow_zero: bool = True) -> None:
    low = 0 if allow_zero else 1
    if not low <= marked <= list_size:
        raise CostModelError(f"marked count must lie in [{low}, {list_size}], got {marked}")


def _check_epsilon(epsilon: float) -> None:
    if not 0.0 < epsilon < 1.0:
        raise CostModelError(f"epsilon must lie in (0, 1), got {epsilon}")


@lru_cache(maxsize=None)
def k_max(list_size: int) -> int:
    """
    Number of schedule rounds, ``ceil(log_{6/5}(|L| / (2 sqrt(|L| - 1)))) + 4``.

    Evaluated in integer arithmetic: the ceiling is the smallest ``k >= 0``
    with ``36^k * 4(|L| - 1) >= |L|^2 * 25^k``.
    """
    _check_list_size(list_size)
    lhs, rhs = 4 * (list_size - 1), list_size * list_size
    k = 0
    while lhs < rhs:
        lhs *= LAMBDA.numerator**2
        rhs *= LAMBDA.denominator**2
        k += 1
    return k + MIN_K_MAX


def _k_max_clamped(list_size: int) -> int:
    return k_max(list_size) if list_size >= 2 else MIN_K_MAX


def m_k(list_size: int, k: int) -> int:
    """Iteration bound of round ``k``: ``floor(min((6/5)^k, sqrt(|L|)))``."""
    if k < 1:
        raise CostModelError(f"round index must be at least 1, got {k}")
    if list_size < 1:
        raise CostModelError(f"list size must be positive, got {list_size}")
    return _m_k(list_size, k)


@lru_cache(maxsize=4096)
def _m_k(list_size: int, k: int) -> int:
    return min(LAMBDA.numerator**k // LAMBDA.denominator**k, math.isqrt(list_size))


@lru_cache(maxsize=None)
def _uncapped_schedule(rounds: int) -> tuple[int, ...]:
    return tuple(LAMBDA.numerator**k // LAMBDA.denominator**k for k in range(1, rounds + 1))


def s_max(epsilon: float = DEFAULT_EPSILON) -> int:
    """Outer rounds for failure probability ``epsilon``: ``ceil(log_3(1 / epsilon))``, at least 1."""
    _check_epsilon(epsilon)
    s = 1
    while 3**s * epsilon < 1.0:
        s += 1
    return s


def theta_of(list_size: int, marked: int) -> float:
    """Grover angle with ``sin^2(theta) = marked / list_size``."""
    return math.asin(math.sqrt(marked / list_size))


@lru_cache(maxsize=65536)
def _direct_average(m: int, theta: float) -> float:
    j = np.arange(m + 1, dtype=float)
    return float(np.mean(np.sin((2.0 * j + 1.0) * theta) ** 2))


def avg_success_probability(m: int, theta: float, method: SuccessMethod = "auto") -> float:
    """
    Mean of ``sin^2((2j + 1) theta)`` over ``j`` uniform in ``{0, ..., m}``.

    ``"closed"`` uses ``1/2 - sin(4(m+1)theta) / (4(m+1) sin 2theta)``;
    ``"direct"`` sums the ``m + 1`` terms. ``"auto"`` picks the closed form
    unless ``|sin 2theta| < 1e-9``. The result is clamped to ``[0, 1]``.
    """
    if m < 0:
        raise CostModelError(f"iteration bound must be non-negative, got {m}")
    if not 0.0 < theta <= math.pi / 2:
        raise CostModelError(f"theta must lie in (0, pi/2], got {theta}")
    if method not in ("auto", "closed", "direct"):
        raise CostModelError(f"unknown method {method!r}")

    sin_2theta = math.sin(2.0 * theta)
    if method == "direct" or (method == "auto" and abs(sin_2theta) < DEGENERATE_SIN_2THETA):
        value = _direct_average(m, theta)
    else:
        correction = math.sin(4.0 * (m + 1) * theta) / (4.0 * (m + 1) * sin_2theta)
        if abs(correction) < _SNAP:
            correction = 0.0
        value = 0.5 - correction
    return min(1.0, max(0.0, value))


def _expected_iterations_kernel(list_sizes: np.ndarray, marked: np.ndarray) -> np.ndarray:
    """
    ``n_Q`` for many ``(|L|, t)`` pairs at once.

    Rows with ``|L| < 2`` use the clamped round count.
    """
    rounds = np.array([_k_max_clamped(int(size)) for size in list_sizes], dtype=np.int64)
    width = int(rounds.max())
    schedule = np.array(_uncapped_schedule(width), dtype=float)
    caps = np.array([math.isqrt(int(size)) for size in list_sizes], dtype=float)
    m = np.minimum(schedule[np.newaxis, :], caps[:, np.newaxis])

    theta = np.arcsin(np.sqrt(marked / list_sizes))
    sin_2theta = np.sin(2.0 * theta)
    degenerate = np.abs(sin_2theta) < DEGENERATE_SIN_2THETA

    with np.errstate(divide="ignore", invalid="ignore"):
        correction = np.sin(4.0 * (m + 1.0) * theta[:, np.newaxis]) / (
            4.0 * (m + 1.0) * sin_2theta[:, np.newaxis]
        )
    correction[np.abs(correction) < _SNAP] = 0.0
    success = 0.5 - correction

    for row in np.flatnonzero(degenerate):
        success[row] = [_direct_average(int(bound), float(theta[row])) for bound in m[row]]
    success = np.clip(success, 0.0, 1.0)

    # Probability that every earlier round failed; 1 for the first round.
    reach = np.ones_like(success)
    reach[:, 1:] = np.cumprod(1.0 - success[:, :-1], axis=1)

    in_schedule = np.arange(1, width + 1)[np.newaxis, :] <= rounds[:, np.newaxis]
    return np.sum(np.where(in_schedule, 0.5 * m * reach, 0.0), axis=1)


@lru_cache(maxsize=65536)
def expected_iterations_one(list_size: int, marked: int) -> float:
    """
    Expected Grover iterations to find one of ``marked`` items (``n_Q``).

    Sums ``m_k / 2`` over the ``k_max`` rounds, each weighted by the chance
    that all earlier rounds failed.
    """
    _check_list_size(list_size)
    _check_marked(list_size, marked, allow_zero=False)
    value = _expected_iterations_kernel(np.array([list_size], dtype=float), np.array([marked], dtype=float))
    return float(value[0])


def clamped_summands(list_size: int, marked: int) -> int:
    """Number of ``N_Q`` summands whose list has fewer than two items."""
    # Summand i searches a list of |L| - i; only the last one can drop below 2.
    return sum(1 for i in range(marked) if list_size - i < 2)


@lru_cache(maxsize=65536)
def expected_iterations_all(list_size: int, marked: int) -> float:
    """
    Expected Grover iterations to find all ``marked`` items (``N_Q``).

    Found items are removed, so this is ``sum_{i < t} n_Q(|L| - i, t - i)``;
    ``N_Q(|L|, 0) = 0``. A summand with a one-item list is evaluated with
    ``k_max`` clamped to 4.
    """
    _check_list_size(list_size)
    _check_marked(list_size, marked)
    if marked == 0:
        return 0.0

    offsets = np.arange(marked, dtype=float)
    values = _expected_iterations_kernel(list_size - offsets, marked - offsets)
    clamped = clamped_summands(list_size, marked)
    if clamped:
        logger.debug("N_Q(%d, %d): %d summand(s) evaluated with k_max clamped", list_size, marked, clamped)
    return float(np.sum(values))


@dataclass(frozen=True)
class QSearchParams:
    """Parameters of one QSearch call over ``list_size`` items, ``marked`` of them marked."""

    list_size: int
    marked: int
    epsilon: float
    theta: Optional[float]
    s_max: int
    k_max: int
    lam: Fraction = LAMBDA

    @property
    def schedule(self) -> tuple[int, ...]:
        """``m_1 .. m_{k_max}``."""
        return tuple(_m_k(self.list_size, k) for k in range(1, self.k_max + 1))


def qsearch_params(list_size: int, marked: int, epsilon: float = DEFAULT_EPSILON) -> QSearchParams:
    """Bundle the schedule parameters; ``theta`` is None when nothing is marked."""
    _check_list_size(list_size)
    _check_marked(list_size, marked)
    return QSearchParams(
        list_size=list_size,
        marked=marked,
        epsilon=epsilon,
        theta=theta_of(list_size, marked) if marked else None,
        s_max=s_max(epsilon),
        k_max=k_max(list_size),
    )


@dataclass(frozen=True)
class CycleModel:
    """Cycle breakdown of one Grover iteration over ``list_size`` items."""

    list_size: int
    oracle_cycles: int
    hadamard_cycles: int
    multicontrolled_z_cycles: int

    @property
    def total_per_iteration(self) -> int:
        return self.oracle_cycles + self.hadamard_cycles + self.multicontrolled_z_cycles

    @property
    def breakdown(self) -> tuple[int, int, int, int]:
        """Oracle, Hadamard layer, multi-controlled Z, Hadamard layer."""
        half = self.hadamard_cycles // 2
        return (self.oracle_cycles, half, self.multicontrolled_z_cycles, self.hadamard_cycles - half)


def cycle_model(list_size: int) -> CycleModel:
    """Multi-controlled Z costs ``2(|L| - 2)`` CNOT cycles plus one CZ."""
    _check_list_size(list_size)
    return CycleModel(
        list_size=list_size,
        oracle_cycles=1,
        hadamard_cycles=2,
        multicontrolled_z_cycles=2 * (list_size - 2) + 1,
    )


def cycles_per_iteration(list_size: int) -> int:
    """Cycles of one Grover iteration: exactly ``2|L|``."""
    return cycle_model(list_size).total_per_iteration


def failing_run_iterations(list_size: int, epsilon: float = DEFAULT_EPSILON) -> float:
    """Iterations of a search that never succeeds: ``s_max * sum_k m_k / 2``."""
    params = qsearch_params(list_size, 0, epsilon)
    return params.s_max * sum(params.schedule) / 2


def gate_count(
    list_size: int,
    marked: int,
    strict: bool = False,
    epsilon: float = DEFAULT_EPSILON,
) -> float:
    """
    Expected minimum gates ``G_Q = 2|L| * N_Q`` at one gate per cycle.

    With ``strict``, an empty search (``marked == 0``) is charged a full
    failing run instead of zero.
    """
    if strict and marked == 0:
        return cycles_per_iteration(list_size) * failing_run_iterations(list_size, epsilon)
    return cycles_per_iteration(list_size) * expected_iterations_all(list_size, marked)


@dataclass(frozen=True)
class CostEstimate:
    """
    Per-layer and total cost of one BFS phase.

    In strict mode the last entry of each per-layer tuple is the empty
    layer that ends the BFS.
    """

    list_size: int
    layer_sizes: tuple[int, ...]
    n_q_per_layer: tuple[float, ...]
    N_q_per_layer: tuple[float, ...]
    gates_per_layer: tuple[float, ...]
    total_gates: float
    clamped_summands: int = 0
    strict: bool = False


def cost_estimate(
    record: BfsPhaseRecord,
    strict: bool = False,
    epsilon: float = DEFAULT_EPSILON,
) -> CostEstimate:
    """Price every recorded layer of ``record`` over the phase's full vertex count."""
    size = record.total_vertices
    _check_list_size(size)

    layers = list(record.layer_sizes)
    n_q = [expected_iterations_one(size, t) for t in layers]
    big_n_q = [expected_iterations_all(size, t) for t in layers]
    if strict:
        layers.append(0)
        failing = failing_run_iterations(size, epsilon)
        n_q.append(failing)
        big_n_q.append(failing)

    cycles = cycles_per_iteration(size)
    gates = [cycles * value for value in big_n_q]
    estimate = CostEstimate(
        list_size=size,
        layer_sizes=tuple(layers),
        n_q_per_layer=tuple(n_q),
        N_q_per_layer=tuple(big_n_q),
        gates_per_layer=tuple(gates),
        total_gates=float(sum(gates)),
        clamped_summands=sum(clamped_summands(size, t) for t in record.layer_sizes),
        strict=strict,
    )
    logger.debug(
        "phase %d: |L|=%d, %d layers, %.6g gates",
        record.phase_index,
        size,
        len(record.layer_sizes),
        estimate.total_gates,
    )
    return estimate


def phase_gate_count(
    record: BfsPhaseRecord,
    strict: bool = False,
    epsilon: float = DEFAULT_EPSILON,
) -> float:
    """Total expected gates of every layer in ``record``."""
    return cost_estimate(record, strict=strict, epsilon=epsilon).total_gates


def required_gate_time(bfs_wall_time: int, gates: float) -> Optional[float]:
    """
    Gate time in seconds at which ``gates`` quantum gates take as long as the BFS.

    Returns None when ``gates`` is zero (no data point).
    """
    if bfs_wall_time <= 0:
        raise CostModelError(f"BFS wall time must be positive, got {bfs_wall_time} ns")
    if gates <= 0:
        return None
    return bfs_wall_time / 1e9 / gates


class ThresholdVerdict(BaseModel):
    """How a required gate time compares with the fastest demonstrated gate."""

    model_config = ConfigDict(frozen=True)

    feasible: bool
    margin: float = Field(..., gt=0, description="reference / tau")

    @property
    def label(self) -> str:
        return "feasible" if self.feasible else "infeasible"


def compare_threshold(tau: float, reference: float = GATE_TIME_RECORD) -> ThresholdVerdict:
    """Infeasible when quantum gates would have to beat ``reference``."""
    if not tau > 0:
        raise CostModelError(f"gate time must be positive, got {tau}")
    if not reference > 0:
        raise CostModelError(f"reference gate time must be positive, got {reference}")
    return ThresholdVerdict(feasible=tau >= reference, margin=reference / tau)
