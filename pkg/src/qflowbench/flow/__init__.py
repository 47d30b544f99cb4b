"""Max-flow solvers: instrumented Dinic, Edmonds-Karp oracle, min-cut certificates."""

from qflowbench.flow.certificate import min_cut_source_side, verify_min_cut_certificate
from qflowbench.flow.dinic import DinicResult, bfs_level, blocking_flow, dinic_max_flow
from qflowbench.flow.edmonds_karp import edmonds_karp_max_flow
from qflowbench.flow.records import UNREACHED, BfsPhaseRecord, LevelAssignment

__all__ = [
    "min_cut_source_side",
    "verify_min_cut_certificate",
    "DinicResult",
    "bfs_level",
    "blocking_flow",
    "dinic_max_flow",
    "edmonds_karp_max_flow",
    "UNREACHED",
    "BfsPhaseRecord",
    "LevelAssignment",
]
