"""
End-to-end benchmark pipeline.

Solve an instance several times, take the per-phase median BFS time, price
each phase with the quantum cost model and divide to get the gate time a
quantum BFS would need to keep up.
"""

from __future__ import annotations

import logging
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from qflowbench.core.config import RunConfig, get_config
from qflowbench.core.dimacs import read_dimacs
from qflowbench.core.errors import BatchError, NetworkError, PhaseMisalignmentError
from qflowbench.core.network import FlowNetwork
from qflowbench.flow.dinic import Clock, DinicResult, dinic_max_flow
from qflowbench.flow.records import BfsPhaseRecord
from qflowbench.quantum.cost import compare_threshold, phase_gate_count, required_gate_time

logger = logging.getLogger(__name__)

DEFAULT_PATTERN = "*.max"


class InstanceResult(BaseModel):
    """
    Benchmark record of one instance.

    The ``per_phase_*`` tuples are aligned with ``priced_phase_indices``;
    ``phases`` holds every BFS of the solve, the terminating one included.
    Times are medians over the timing repetitions.
    """

    model_config = ConfigDict(frozen=True)

    instance_id: str
    vertex_count: int = Field(..., ge=2)
    edge_count: int = Field(..., ge=0)
    flow_value: int = Field(..., ge=0)
    seed: int
    phases: tuple[BfsPhaseRecord, ...]
    priced_phase_indices: tuple[int, ...]
    per_phase_gates: tuple[float, ...]
    per_phase_tau: tuple[Optional[float], ...]
    per_phase_verdicts: tuple[Optional[str], ...]
    total_bfs_time: int = Field(..., ge=0, description="Priced BFS time in nanoseconds")
    total_gates: float = Field(..., ge=0)
    aggregate_tau: Optional[float] = None
    verdict: Optional[str] = None
    margin: Optional[float] = None

    def priced_phases(self) -> list[BfsPhaseRecord]:
        return [self.phases[i] for i in self.priced_phase_indices]

    def timing_masked(self) -> dict:
        """The record without any field derived from wall-clock time."""
        data = self.model_dump(
            exclude={"per_phase_tau", "per_phase_verdicts", "total_bfs_time", "aggregate_tau", "verdict", "margin"}
        )
        for phase in data["phases"]:
            phase.pop("bfs_wall_time")
        return data


class SkippedInstance(BaseModel):
    """A corpus file that could not be benchmarked."""

    model_config = ConfigDict(frozen=True)

    instance_id: str
    path: str
    reason: str


class BenchSummary(BaseModel):
    """Headline numbers of a benchmark run."""

    model_config = ConfigDict(frozen=True)

    instance_count: int
    priced_instance_count: int
    threshold: float
    tau_min: Optional[float] = None
    tau_max: Optional[float] = None
    tau_median: Optional[float] = None
    phase_tau_min: Optional[float] = None
    phase_tau_max: Optional[float] = None
    infeasible_count: int = 0
    min_vertices: int
    max_vertices: int
    skipped_count: int = 0


def _check_alignment(runs: list[DinicResult], instance_id: str) -> None:
    reference = runs[0]
    structure = [record.structure() for record in reference.phases]
    for repetition, run in enumerate(runs[1:], start=1):
        if run.flow_value != reference.flow_value or [r.structure() for r in run.phases] != structure:
            raise PhaseMisalignmentError(
                f"{instance_id}: repetition {repetition} produced a different phase structure "
                f"({len(run.phases)} vs {len(reference.phases)} phases)"
            )


def run_instance(
    network: FlowNetwork,
    config: Optional[RunConfig] = None,
    instance_id: str = "instance",
    clock: Optional[Clock] = None,
) -> InstanceResult:
    """
    Benchmark one network.

    Raises:
        PhaseMisalignmentError: If repetitions disagree on anything but timing.
    """
    config = config or get_config()
    if config.warmup:
        dinic_max_flow(network, clock)
    runs = [dinic_max_flow(network, clock) for _ in range(config.timing_repetitions)]
    _check_alignment(runs, instance_id)

    phases = tuple(
        record.with_wall_time(statistics.median_low(run.phases[i].bfs_wall_time for run in runs))
        for i, record in enumerate(runs[0].phases)
    )
    priced = [p.phase_index for p in phases if p.sink_reached or config.include_terminal_bfs]

    gates: list[float] = []
    taus: list[Optional[float]] = []
    verdicts: list[Optional[str]] = []
    for index in priced:
        record = phases[index]
        phase_gates = phase_gate_count(record, strict=config.strict_t0_cost, epsilon=config.epsilon)
        tau = required_gate_time(record.bfs_wall_time, phase_gates)
        gates.append(phase_gates)
        taus.append(tau)
        verdicts.append(compare_threshold(tau, config.threshold).label if tau is not None else None)

    total_time = sum(phases[i].bfs_wall_time for i in priced)
    total_gates = float(sum(gates))
    aggregate = required_gate_time(total_time, total_gates) if total_time > 0 else None
    verdict = compare_threshold(aggregate, config.threshold) if aggregate is not None else None

    result = InstanceResult(
        instance_id=instance_id,
        vertex_count=network.vertex_count,
        edge_count=network.edge_count,
        flow_value=runs[0].flow_value,
        seed=config.seed,
        phases=phases,
        priced_phase_indices=tuple(priced),
        per_phase_gates=tuple(gates),
        per_phase_tau=tuple(taus),
        per_phase_verdicts=tuple(verdicts),
        total_bfs_time=total_time,
        total_gates=total_gates,
        aggregate_tau=aggregate,
        verdict=verdict.label if verdict else None,
        margin=verdict.margin if verdict else None,
    )
    logger.info(
        "%s: flow %d, %d phases, aggregate tau %s",
        instance_id,
        result.flow_value,
        len(phases),
        f"{aggregate:.3e} s" if aggregate is not None else "n/a",
    )
    return result


@dataclass
class DirectoryRun:
    """Results and skips of a batch run, both sorted by instance id."""

    results: list[InstanceResult] = field(default_factory=list)
    skipped: list[SkippedInstance] = field(default_factory=list)

    def __iter__(self) -> Iterator[InstanceResult]:
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)

    @property
    def complete(self) -> bool:
        return bool(self.results) and not self.skipped

    @property
    def exit_code(self) -> int:
        """0 when every instance was processed, 1 for partial or empty runs."""
        return 0 if self.complete else 1


def _process_file(task: tuple[str, RunConfig]) -> Union[InstanceResult, SkippedInstance]:
    path_text, config = task
    path = Path(path_text)
    try:
        network = read_dimacs(path)
    except (NetworkError, OSError, UnicodeDecodeError) as e:
        return SkippedInstance(instance_id=path.stem, path=path_text, reason=str(e))
    return run_instance(network, config, instance_id=path.stem)


def run_directory(
    path: Union[str, Path],
    pattern: str = DEFAULT_PATTERN,
    config: Optional[RunConfig] = None,
) -> DirectoryRun:
    """
    Benchmark every file in ``path`` matching ``pattern``.

    Files are visited in lexicographic order and spread over
    ``config.parallel_workers`` processes; unparsable files are logged and
    skipped.

    Raises:
        BatchError: If ``path`` is not a readable directory, or files exist
            but none could be benchmarked.
    """
    config = config or get_config()
    directory = Path(path)
    if not directory.is_dir():
        raise BatchError(f"not a readable directory: {directory}")

    files = sorted(str(p) for p in directory.glob(pattern) if p.is_file())
    if not files:
        logger.warning("no files matching %r in %s", pattern, directory)
        return DirectoryRun()

    tasks = [(f, config) for f in files]
    if config.parallel_workers > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=config.parallel_workers) as executor:
            outcomes = list(executor.map(_process_file, tasks))
    else:
        outcomes = [_process_file(task) for task in tasks]

    run = DirectoryRun()
    for outcome in outcomes:
        if isinstance(outcome, SkippedInstance):
            logger.warning("skipped %s: %s", outcome.path, outcome.reason)
            run.skipped.append(outcome)
        else:
            run.results.append(outcome)

    if not run.results:
        raise BatchError(f"all {len(files)} instance(s) in {directory} failed")

    run.results.sort(key=lambda r: r.instance_id)
    run.skipped.sort(key=lambda s: s.instance_id)
    return run


def summarize(
    results: list[InstanceResult],
    threshold: Optional[float] = None,
    skipped_count: int = 0,
) -> BenchSummary:
    """
    Min, max and median aggregate gate time, infeasible count and size range.

    Raises:
        BatchError: If ``results`` is empty.
    """
    if not results:
        raise BatchError("cannot summarize an empty result set")
    threshold = threshold if threshold is not None else get_config().threshold

    taus = [r.aggregate_tau for r in results if r.aggregate_tau is not None]
    phase_taus = [tau for r in results for tau in r.per_phase_tau if tau is not None]
    sizes = [r.vertex_count for r in results]
    return BenchSummary(
        instance_count=len(results),
        priced_instance_count=len(taus),
        threshold=threshold,
        tau_min=min(taus) if taus else None,
        tau_max=max(taus) if taus else None,
        tau_median=statistics.median(taus) if taus else None,
        phase_tau_min=min(phase_taus) if phase_taus else None,
        phase_tau_max=max(phase_taus) if phase_taus else None,
        infeasible_count=sum(1 for tau in taus if compare_threshold(tau, threshold).label == "infeasible"),
        min_vertices=min(sizes),
        max_vertices=max(sizes),
        skipped_count=skipped_count,
    )
