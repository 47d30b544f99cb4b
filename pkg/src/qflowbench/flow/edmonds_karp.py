"""
Edmonds-Karp shortest-augmenting-path max flow.

Kept deliberately separate from the Dinic solver: it works on an
aggregated capacity map (parallel edges merged) instead of paired arcs,
so the two implementations can check each other.
"""

from __future__ import annotations

from collections import defaultdict, deque

from qflowbench.core.network import FlowNetwork


def edmonds_karp_max_flow(network: FlowNetwork) -> int:
    """Maximum flow value of ``network``."""
    capacity: dict[int, dict[int, int]] = defaultdict(dict)
    for tail, head, cap in network.edges:
        capacity[tail][head] = capacity[tail].get(head, 0) + cap
        capacity[head].setdefault(tail, 0)

    source, sink = network.source, network.sink
    flow_value = 0

    while True:
        # Find the shortest augmenting path
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            u = queue.popleft()
            for v, cap in capacity[u].items():
                if cap > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)

        if sink not in parent:
            return flow_value

        bottleneck = None
        v = sink
        while v != source:
            u = parent[v]
            cap = capacity[u][v]
            bottleneck = cap if bottleneck is None else min(bottleneck, cap)
            v = u
        assert bottleneck is not None

        v = sink
        while v != source:
            u = parent[v]
            capacity[u][v] -= bottleneck
            capacity[v][u] += bottleneck
            v = u

        flow_value += bottleneck
