"""
qflowbench - hybrid benchmarking of max-flow BFS against quantum search

Solves maximum-flow instances with an instrumented Dinic's algorithm, prices
every logged BFS layer with a closed-form QSearch cost model, and reports the
gate time a quantum BFS would need to match the classical one.

Basic usage:
    >>> from qflowbench import generate_fig1_network, run_instance
    >>> result = run_instance(generate_fig1_network())
    >>> result.flow_value
    35
"""

from qflowbench.bench.harness import InstanceResult, run_directory, run_instance, summarize
from qflowbench.core.config import RunConfig
from qflowbench.core.dimacs import parse_dimacs, read_dimacs, write_dimacs
from qflowbench.core.generators import generate_fig1_network, generate_random_network
from qflowbench.core.network import FlowNetwork
from qflowbench.flow.dinic import dinic_max_flow
from qflowbench.quantum.cost import gate_count, phase_gate_count, required_gate_time

__version__ = "0.1.0"
__author__ = "qflowbench Contributors"
__license__ = "MIT"

__all__ = [
    "InstanceResult",
    "run_directory",
    "run_instance",
    "summarize",
    "RunConfig",
    "parse_dimacs",
    "read_dimacs",
    "write_dimacs",
    "generate_fig1_network",
    "generate_random_network",
    "FlowNetwork",
    "dinic_max_flow",
    "gate_count",
    "phase_gate_count",
    "required_gate_time",
    "__version__",
]
