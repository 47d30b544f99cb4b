"""
Flow networks and their residual graphs.

A ``FlowNetwork`` is the immutable instance as parsed or generated. A
``ResidualGraph`` is the mutable working copy a solver owns: every original
edge ``i`` becomes the arc pair ``2i`` (forward) and ``2i + 1`` (backward), so
the partner of any arc ``a`` is ``a ^ 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from qflowbench.core.errors import NetworkError

# Capacities are stored as signed 64-bit values in every corpus we ingest.
MAX_CAPACITY = 2**63 - 1


class Edge(NamedTuple):
    """A capacitated directed edge between 1-based vertex ids."""

    tail: int
    head: int
    capacity: int


@dataclass(frozen=True)
class FlowNetwork:
    """
    Immutable capacitated directed graph with a designated source and sink.

    Vertex ids are 1-based, as in DIMACS. Edge order is preserved exactly
    as given; solvers scan arcs in this order.

    Example:
        >>> net = FlowNetwork(2, 1, 2, [Edge(1, 2, 5)])
        >>> net.edge_count
        1
    """

    vertex_count: int
    source: int
    sink: int
    edges: tuple[Edge, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        edges = tuple(Edge(*edge) for edge in self.edges)
        object.__setattr__(self, "edges", edges)

        if self.vertex_count < 1:
            raise NetworkError(f"vertex_count must be positive, got {self.vertex_count}")
        for role, vertex in (("source", self.source), ("sink", self.sink)):
            if not 1 <= vertex <= self.vertex_count:
                raise NetworkError(f"{role} {vertex} out of range 1..{self.vertex_count}")
        if self.source == self.sink:
            raise NetworkError("source and sink must differ")

        for index, (tail, head, capacity) in enumerate(edges):
            if not (1 <= tail <= self.vertex_count and 1 <= head <= self.vertex_count):
                raise NetworkError(f"edge {index} ({tail}, {head}) has an endpoint out of range")
            if tail == head:
                raise NetworkError(f"edge {index} is a self-loop on vertex {tail}")
            if not 0 <= capacity <= MAX_CAPACITY:
                raise NetworkError(f"edge {index} has capacity {capacity} outside 0..2^63-1")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def total_capacity(self) -> int:
        return sum(edge.capacity for edge in self.edges)

    def vertices(self) -> range:
        """All vertex ids, 1..vertex_count."""
        return range(1, self.vertex_count + 1)

    def __repr__(self) -> str:
        return (
            f"FlowNetwork(vertices={self.vertex_count}, edges={self.edge_count}, "
            f"source={self.source}, sink={self.sink})"
        )


class ResidualGraph:
    """
    Paired-arc residual graph, owned by exactly one solver.

    Invariant: for every edge ``i``,
    ``residual[2i] + residual[2i + 1] == capacity[i]`` and both are ``>= 0``.
    Arc lists per vertex follow edge insertion order; the backward arc of an
    edge is registered at its head when the edge is inserted.
    """

    __slots__ = ("vertex_count", "source", "sink", "capacity", "tail", "head", "residual", "adjacency")

    def __init__(self, vertex_count: int, source: int, sink: int) -> None:
        self.vertex_count = vertex_count
        self.source = source
        self.sink = sink
        self.capacity: list[int] = []
        self.tail: list[int] = []
        self.head: list[int] = []
        self.residual: list[int] = []
        # Slot 0 is unused so vertex ids index directly.
        self.adjacency: list[list[int]] = [[] for _ in range(vertex_count + 1)]

    def add_edge(self, tail: int, head: int, capacity: int) -> int:
        """Append an edge with zero flow and return its forward arc id."""
        arc = len(self.head)
        self.capacity.append(capacity)
        self.tail.extend((tail, head))
        self.head.extend((head, tail))
        self.residual.extend((capacity, 0))
        self.adjacency[tail].append(arc)
        self.adjacency[head].append(arc + 1)
        return arc

    @property
    def arc_count(self) -> int:
        return len(self.head)

    @property
    def edge_count(self) -> int:
        return len(self.capacity)

    def push(self, arc: int, amount: int) -> None:
        """Send ``amount`` units along ``arc``, updating its partner."""
        if amount < 0 or amount > self.residual[arc]:
            raise NetworkError(
                f"cannot push {amount} on arc {arc} with residual {self.residual[arc]}"
            )
        self.residual[arc] -= amount
        self.residual[arc ^ 1] += amount

    def edge_flow(self, edge_index: int) -> int:
        """Flow currently carried by original edge ``edge_index``."""
        return self.residual[2 * edge_index + 1]

    def positive_arcs(self, vertex: int) -> Iterator[int]:
        """Arcs leaving ``vertex`` with positive residual capacity."""
        residual = self.residual
        return (arc for arc in self.adjacency[vertex] if residual[arc] > 0)

    def pairs_conserved(self) -> bool:
        """Check the arc-pair invariant on every edge."""
        residual = self.residual
        return all(
            residual[2 * i] >= 0
            and residual[2 * i + 1] >= 0
            and residual[2 * i] + residual[2 * i + 1] == cap
            for i, cap in enumerate(self.capacity)
        )

    def copy(self) -> "ResidualGraph":
        clone = ResidualGraph(self.vertex_count, self.source, self.sink)
        clone.capacity = list(self.capacity)
        clone.tail = list(self.tail)
        clone.head = list(self.head)
        clone.residual = list(self.residual)
        clone.adjacency = [list(arcs) for arcs in self.adjacency]
        return clone

    def __repr__(self) -> str:
        return f"ResidualGraph(vertices={self.vertex_count}, arcs={self.arc_count})"


def build_residual(network: FlowNetwork) -> ResidualGraph:
    """
    Build the zero-flow residual graph of ``network``.

    Forward residuals equal the capacities, backward residuals are zero.
    Parallel and antiparallel edges stay independent arc pairs.
    """
    residual = ResidualGraph(network.vertex_count, network.source, network.sink)
    for tail, head, capacity in network.edges:
        residual.add_edge(tail, head, capacity)
    return residual
