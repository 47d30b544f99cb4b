"""
Instrumented Dinic max-flow solver.

Each phase levels the residual graph with a timed BFS, then saturates the
level graph with an iterative blocking-flow search. Every BFS call,
including the final one that no longer reaches the sink, is logged as a
``BfsPhaseRecord``.
"""

from __future__ import annotations

import logging
import time
from collections import deque
from typing import Callable, NamedTuple, Optional

from qflowbench.core.network import FlowNetwork, ResidualGraph, build_residual
from qflowbench.flow.records import UNREACHED, BfsPhaseRecord, LevelAssignment

logger = logging.getLogger(__name__)

Clock = Callable[[], int]
"""Monotonic clock returning nanoseconds."""

default_clock: Clock = time.perf_counter_ns


class DinicResult(NamedTuple):
    """Outcome of a full solve; unpacks as ``(flow_value, phases, residual)``."""

    flow_value: int
    phases: list[BfsPhaseRecord]
    residual: ResidualGraph


def bfs_level(
    residual: ResidualGraph,
    source: int,
    clock: Clock = default_clock,
    phase_index: int = 0,
) -> tuple[LevelAssignment, BfsPhaseRecord]:
    """
    Level every vertex reachable from ``source`` over positive-residual arcs.

    Arcs are scanned in insertion order and ties go to queue order, so the
    result is reproducible. The traversal does not stop at the sink: every
    reachable vertex gets its shortest residual distance.

    The clock brackets the traversal only (queue operations and arc scans);
    assembling the record afterwards is not timed.
    """
    adjacency = residual.adjacency
    head = residual.head
    capacity_left = residual.residual
    levels = [UNREACHED] * (residual.vertex_count + 1)

    started = clock()
    levels[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        next_level = levels[u] + 1
        for arc in adjacency[u]:
            if capacity_left[arc] > 0:
                v = head[arc]
                if levels[v] == UNREACHED:
                    levels[v] = next_level
                    queue.append(v)
    elapsed = clock() - started

    assignment = LevelAssignment(tuple(levels))
    sink_level = assignment.of(residual.sink)
    record = BfsPhaseRecord(
        phase_index=phase_index,
        total_vertices=residual.vertex_count,
        layer_sizes=tuple(assignment.layer_sizes()),
        sink_reached=sink_level is not None,
        sink_level=sink_level,
        bfs_wall_time=max(1, elapsed),
    )
    return assignment, record


def blocking_flow(
    residual: ResidualGraph,
    levels: LevelAssignment,
    source: int,
    sink: int,
) -> int:
    """
    Saturate the level graph and return the flow pushed.

    Only arcs from level ``l`` to ``l + 1`` are used. Each vertex keeps a
    cursor into its arc list; an arc is skipped for good once it is
    saturated, leaves the level graph, or leads to a dead end, so every arc
    is abandoned at most once per phase. The search is iterative.
    """
    level = levels.levels
    sink_level = level[sink]
    if sink_level == UNREACHED:
        return 0

    adjacency = residual.adjacency
    head = residual.head
    capacity_left = residual.residual
    cursor = [0] * (residual.vertex_count + 1)
    pushed_total = 0

    while True:
        path: list[int] = []
        u = source
        while u != sink:
            arcs = adjacency[u]
            i = cursor[u]
            want = level[u] + 1
            while i < len(arcs):
                arc = arcs[i]
                v = head[arc]
                if capacity_left[arc] > 0 and level[v] == want and (want < sink_level or v == sink):
                    break
                i += 1
            cursor[u] = i

            if i < len(arcs):
                arc = arcs[i]
                path.append(arc)
                u = head[arc]
                continue

            # Dead end: retreat and prune the arc that led here.
            if not path:
                return pushed_total
            arc = path.pop()
            u = head[arc ^ 1]
            cursor[u] += 1

        amount = min(capacity_left[arc] for arc in path)
        for arc in path:
            capacity_left[arc] -= amount
            capacity_left[arc ^ 1] += amount
        pushed_total += amount


def admissible_path_exists(residual: ResidualGraph, levels: LevelAssignment, source: int, sink: int) -> bool:
    """True if the sink is reachable using only positive, level-increasing arcs."""
    level = levels.levels
    seen = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for arc in residual.positive_arcs(u):
            v = residual.head[arc]
            if v not in seen and level[v] == level[u] + 1:
                if v == sink:
                    return True
                seen.add(v)
                queue.append(v)
    return False


def dinic_max_flow(network: FlowNetwork, clock: Optional[Clock] = None) -> DinicResult:
    """
    Solve ``network`` and log every BFS phase.

    Returns:
        ``DinicResult(flow_value, phases, residual)``. The last phase is the
        terminating BFS with ``sink_reached == False``.
    """
    clock = clock or default_clock
    residual = build_residual(network)
    phases: list[BfsPhaseRecord] = []
    flow_value = 0

    while True:
        levels, record = bfs_level(residual, network.source, clock, phase_index=len(phases))
        phases.append(record)
        if not record.sink_reached:
            break
        pushed = blocking_flow(residual, levels, network.source, network.sink)
        flow_value += pushed
        logger.debug(
            "phase %d: sink level %s, %d layers, pushed %d",
            record.phase_index,
            record.sink_level,
            len(record.layer_sizes),
            pushed,
        )

    return DinicResult(flow_value, phases, residual)
