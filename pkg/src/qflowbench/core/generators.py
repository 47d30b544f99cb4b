"""
Deterministic instance generators for desk-scale benchmarking.

All generators are pure functions of their arguments: the same arguments
give bit-identical networks on every run.
"""

from __future__ import annotations

import numpy as np

from qflowbench.core.errors import NetworkError
from qflowbench.core.network import Edge, FlowNetwork

RNG_NAME = "numpy.PCG64"


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """
    PCG64 generator for ``seed``, optionally on an independent sub-stream.

    ``make_rng(seed, i)`` and ``make_rng(seed, j)`` are statistically
    independent for ``i != j``. Negative seeds wrap into the unsigned 64-bit
    range.
    """
    sequence = np.random.SeedSequence(seed % 2**64, spawn_key=tuple(stream))
    return np.random.Generator(np.random.PCG64(sequence))


def derive_seed(seed: int, index: int) -> int:
    """A 64-bit child seed for item ``index`` of a seeded family."""
    sequence = np.random.SeedSequence(seed % 2**64, spawn_key=(index,))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def generate_random_network(n: int, m: int, cmax: int, seed: int) -> FlowNetwork:
    """
    Random network on ``n`` vertices with exactly ``m`` edges.

    Source is vertex 1, sink is vertex ``n``. A random source-to-sink chain
    through distinct intermediate vertices is embedded first, so the sink is
    always reachable; the remaining edges pick uniform endpoints without
    self-loops. Capacities are uniform in ``[1, cmax]``.

    Raises:
        NetworkError: If ``n < 2``, ``cmax < 1`` or ``m`` is smaller than the
            one edge the chain needs.
    """
    if n < 2:
        raise NetworkError(f"need at least 2 vertices, got {n}")
    if cmax < 1:
        raise NetworkError(f"cmax must be at least 1, got {cmax}")
    if m < 1:
        raise NetworkError(f"need at least 1 edge for the embedded source-sink chain, got {m}")

    rng = make_rng(seed)

    max_intermediate = min(n - 2, m - 1)
    hops = int(rng.integers(0, max_intermediate + 1))
    intermediates = rng.permutation(np.arange(2, n))[:hops] if hops else np.empty(0, dtype=np.int64)
    chain = [1, *(int(v) for v in intermediates), n]
    pairs = list(zip(chain[:-1], chain[1:]))

    extra = m - len(pairs)
    if extra:
        tails = rng.integers(1, n + 1, size=extra)
        # Draw from the n - 1 other vertices, skipping the tail itself.
        heads = rng.integers(1, n, size=extra)
        heads = heads + (heads >= tails)
        pairs.extend(zip(tails.tolist(), heads.tolist()))

    capacities = rng.integers(1, cmax + 1, size=m).tolist()
    edges = tuple(Edge(int(u), int(v), int(c)) for (u, v), c in zip(pairs, capacities))
    return FlowNetwork(n, 1, n, edges)


def generate_grid_network(rows: int, cols: int, cmax: int, seed: int) -> FlowNetwork:
    """
    Grid of ``rows x cols`` cells between a source and a sink.

    Vertex 1 is the source, cell ``(r, c)`` is ``2 + r * cols + c`` and the
    sink is ``rows * cols + 2``. The source feeds every first-column cell,
    every last-column cell drains into the sink, and cells connect rightward
    and to both vertical neighbours. Capacities are uniform in ``[1, cmax]``.
    """
    if rows < 1 or cols < 1:
        raise NetworkError(f"grid needs at least one row and column, got {rows}x{cols}")
    if cmax < 1:
        raise NetworkError(f"cmax must be at least 1, got {cmax}")

    def cell(r: int, c: int) -> int:
        return 2 + r * cols + c

    source, sink = 1, rows * cols + 2
    pairs: list[tuple[int, int]] = [(source, cell(r, 0)) for r in range(rows)]
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                pairs.append((cell(r, c), cell(r, c + 1)))
            if r + 1 < rows:
                pairs.append((cell(r, c), cell(r + 1, c)))
            if r > 0:
                pairs.append((cell(r, c), cell(r - 1, c)))
    pairs.extend((cell(r, cols - 1), sink) for r in range(rows))

    capacities = make_rng(seed).integers(1, cmax + 1, size=len(pairs)).tolist()
    edges = tuple(Edge(u, v, int(c)) for (u, v), c in zip(pairs, capacities))
    return FlowNetwork(sink, source, sink, edges)


def generate_fig1_network() -> FlowNetwork:
    """
    The 11-vertex, 15-edge worked example for Dinic's algorithm.

    Only the path capacities of the original drawing are known, so this is
    one reconstruction consistent with them, not the unique one:

    * phase 1 (sink at level 4) pushes ``min(10, 17, 17, 10) = 10`` along
      ``s-a1-a2-a3-t`` and ``min(15, 30, 17, 15) = 15`` along ``s-b1-b2-b3-t``;
    * phase 2 (sink at level 6) first dead-ends at ``b3``, backtracks, and
      pushes ``min(15, 12, 17, 15, 17, 10) = 10`` along
      ``s-c1-c2-b1-b2-c3-t``;
    * all three sink edges are then saturated, so the maximum flow is 35.

    Vertex ids: s=1, a1..a3=2..4, b1..b3=5..7, c1..c3=8..10, t=11.
    """
    edges = (
        Edge(1, 2, 10),
        Edge(2, 3, 17),
        Edge(3, 4, 17),
        Edge(4, 11, 10),
        Edge(1, 5, 15),
        Edge(5, 6, 30),
        Edge(6, 7, 17),
        Edge(7, 11, 15),
        Edge(1, 8, 15),
        Edge(8, 9, 12),
        Edge(9, 5, 17),
        Edge(6, 10, 17),
        Edge(10, 11, 10),
        Edge(8, 3, 4),
        Edge(7, 10, 5),
    )
    return FlowNetwork(11, 1, 11, edges)


def generate_corpus(
    count: int,
    min_vertices: int,
    max_vertices: int,
    seed: int,
    edges_per_vertex: int = 3,
    cmax: int = 100,
) -> list[tuple[str, FlowNetwork]]:
    """
    Log-spaced family of random networks.

    Sizes run geometrically from ``min_vertices`` to ``max_vertices``; each
    instance gets ``edges_per_vertex * n`` edges and its own derived seed.

    Returns:
        ``(instance_id, network)`` pairs; ids sort in generation order.
    """
    if count < 1:
        raise NetworkError(f"corpus needs at least one instance, got {count}")
    if not 2 <= min_vertices <= max_vertices:
        raise NetworkError(f"invalid vertex range {min_vertices}..{max_vertices}")

    sizes = np.geomspace(min_vertices, max_vertices, num=count)
    corpus = []
    for index, size in enumerate(sizes):
        n = int(round(float(size)))
        network = generate_random_network(n, edges_per_vertex * n, cmax, derive_seed(seed, index))
        corpus.append((f"rand-{index:04d}-n{n}", network))
    return corpus
