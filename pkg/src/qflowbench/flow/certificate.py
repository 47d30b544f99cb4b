"""
Max-flow / min-cut certificates.

A completed solve is certified when the source side ``S`` of the final
residual graph excludes the sink, the original edges leaving ``S`` have
total capacity equal to the claimed flow value, and the flow implied by
the residuals is feasible.
"""

from __future__ import annotations

import logging
from collections import deque

from qflowbench.core.network import FlowNetwork, ResidualGraph

logger = logging.getLogger(__name__)


def min_cut_source_side(residual: ResidualGraph, source: int) -> set[int]:
    """Vertices reachable from ``source`` over positive-residual arcs."""
    reached = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for arc in residual.positive_arcs(u):
            v = residual.head[arc]
            if v not in reached:
                reached.add(v)
                queue.append(v)
    return reached


def cut_capacity(network: FlowNetwork, source_side: set[int]) -> int:
    """Total capacity of original edges from ``source_side`` to the rest."""
    return sum(
        cap for tail, head, cap in network.edges if tail in source_side and head not in source_side
    )


def implied_flow_is_feasible(network: FlowNetwork, residual: ResidualGraph, flow_value: int) -> bool:
    """Capacity and conservation constraints for the flow the residuals imply."""
    if residual.edge_count != network.edge_count:
        return False

    net_out = [0] * (network.vertex_count + 1)
    for index, (tail, head, cap) in enumerate(network.edges):
        forward, backward = residual.residual[2 * index], residual.residual[2 * index + 1]
        if residual.capacity[index] != cap or forward < 0 or backward < 0 or forward + backward != cap:
            return False
        net_out[tail] += backward
        net_out[head] -= backward

    for vertex in network.vertices():
        if vertex in (network.source, network.sink):
            continue
        if net_out[vertex] != 0:
            return False
    return net_out[network.source] == flow_value and net_out[network.sink] == -flow_value


def verify_min_cut_certificate(network: FlowNetwork, final_residual: ResidualGraph, flow_value: int) -> bool:
    """
    Check that ``flow_value`` is a maximum flow witnessed by a minimum cut.

    Returns False on any violation instead of raising.
    """
    source_side = min_cut_source_side(final_residual, network.source)
    if network.sink in source_side:
        logger.debug("certificate rejected: sink still reachable in the residual graph")
        return False
    capacity = cut_capacity(network, source_side)
    if capacity != flow_value:
        logger.debug("certificate rejected: cut capacity %d != flow value %d", capacity, flow_value)
        return False
    if not implied_flow_is_feasible(network, final_residual, flow_value):
        logger.debug("certificate rejected: implied flow violates capacity or conservation")
        return False
    return True
