"""
Test configuration and fixtures for qflowbench.
"""

from pathlib import Path

import pytest

from qflowbench.core.config import RunConfig
from qflowbench.core.dimacs import write_dimacs
from qflowbench.core.generators import generate_corpus, generate_fig1_network
from qflowbench.core.network import Edge, FlowNetwork


class FakeClock:
    """Monotonic nanosecond clock that advances by ``step`` on every read."""

    def __init__(self, step: int = 1000) -> None:
        self.step = step
        self.now = 0
        self.reads = 0

    def __call__(self) -> int:
        self.now += self.step
        self.reads += 1
        return self.now


@pytest.fixture
def fake_clock() -> FakeClock:
    """Each BFS is timed as exactly 1000 ns."""
    return FakeClock(step=1000)


@pytest.fixture
def fig1_network() -> FlowNetwork:
    """The 11-vertex worked example (max flow 35)."""
    return generate_fig1_network()


@pytest.fixture
def single_edge_network() -> FlowNetwork:
    """Smallest legal instance: one edge of capacity 5."""
    return FlowNetwork(2, 1, 2, [Edge(1, 2, 5)])


@pytest.fixture
def path_network() -> FlowNetwork:
    """s -> a -> b -> t with bottleneck 7."""
    return FlowNetwork(4, 1, 4, [Edge(1, 2, 9), Edge(2, 3, 7), Edge(3, 4, 12)])


@pytest.fixture
def quick_config() -> RunConfig:
    """Two repetitions, no warm-up, in-process."""
    return RunConfig(timing_repetitions=2, warmup=False, parallel_workers=1, seed=0)


@pytest.fixture
def corpus_dir(tmp_path: Path) -> Path:
    """Directory of four small generated instances."""
    directory = tmp_path / "corpus"
    directory.mkdir()
    for instance_id, network in generate_corpus(4, 10, 60, seed=11):
        (directory / f"{instance_id}.max").write_bytes(write_dimacs(network))
    return directory
