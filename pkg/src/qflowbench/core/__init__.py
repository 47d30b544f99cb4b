"""Flow-network core: instances, residual graphs, DIMACS I/O, generators, config."""

from qflowbench.core.config import GATE_TIME_RECORD, Aggregation, RunConfig, get_config, set_config
from qflowbench.core.dimacs import parse_dimacs, read_dimacs, write_dimacs
from qflowbench.core.errors import (
    BatchError,
    ConfigError,
    CostModelError,
    DimacsParseError,
    NetworkError,
    PhaseMisalignmentError,
    QFlowBenchError,
)
from qflowbench.core.generators import (
    generate_corpus,
    generate_fig1_network,
    generate_grid_network,
    generate_random_network,
)
from qflowbench.core.network import Edge, FlowNetwork, ResidualGraph, build_residual

__all__ = [
    "GATE_TIME_RECORD",
    "Aggregation",
    "RunConfig",
    "get_config",
    "set_config",
    "parse_dimacs",
    "read_dimacs",
    "write_dimacs",
    "BatchError",
    "ConfigError",
    "CostModelError",
    "DimacsParseError",
    "NetworkError",
    "PhaseMisalignmentError",
    "QFlowBenchError",
    "generate_corpus",
    "generate_fig1_network",
    "generate_grid_network",
    "generate_random_network",
    "Edge",
    "FlowNetwork",
    "ResidualGraph",
    "build_residual",
]
