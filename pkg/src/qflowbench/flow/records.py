"""
Level assignments and per-phase BFS logs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

UNREACHED = -1


@dataclass(frozen=True)
class LevelAssignment:
    """
    BFS level of every vertex, indexed by 1-based vertex id.

    ``levels[0]`` is a placeholder and always ``UNREACHED``; unreached
    vertices carry ``UNREACHED`` as well.
    """

    levels: tuple[int, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.levels) - 1

    def of(self, vertex: int) -> Optional[int]:
        """Level of ``vertex``, or None when it was not reached."""
        level = self.levels[vertex]
        return None if level == UNREACHED else level

    def reached(self, vertex: int) -> bool:
        return self.levels[vertex] != UNREACHED

    @property
    def depth(self) -> int:
        """Largest level assigned (0 when only the source is reached)."""
        return max(self.levels[1:], default=UNREACHED)

    def layer_sizes(self) -> list[int]:
        """Vertex count per level 1..depth (the source's level 0 excluded)."""
        counts = Counter(level for level in self.levels[1:] if level > 0)
        return [counts[level] for level in range(1, self.depth + 1)]


class BfsPhaseRecord(BaseModel):
    """
    Log of one BFS leveling inside a max-flow solve.

    ``total_vertices`` is the list size |L| a quantum search would range
    over; ``layer_sizes[i]`` is the number of vertices at level ``i + 1``,
    i.e. the marked items QSearch must find for that layer.
    """

    model_config = ConfigDict(frozen=True)

    phase_index: int = Field(..., ge=0)
    total_vertices: int = Field(..., ge=1)
    layer_sizes: tuple[int, ...] = Field(default_factory=tuple)
    sink_reached: bool
    sink_level: Optional[int] = Field(default=None, ge=1)
    bfs_wall_time: int = Field(..., gt=0, description="Leveling wall time in nanoseconds")

    @model_validator(mode="after")
    def _check_layers(self) -> "BfsPhaseRecord":
        if any(size < 1 for size in self.layer_sizes):
            raise ValueError("every recorded layer must contain at least one vertex")
        if sum(self.layer_sizes) > self.total_vertices - 1:
            raise ValueError(
                f"layers hold {sum(self.layer_sizes)} vertices but only "
                f"{self.total_vertices - 1} besides the source exist"
            )
        if self.sink_reached != (self.sink_level is not None):
            raise ValueError("sink_level must be set exactly when the sink is reached")
        if self.sink_level is not None and self.sink_level > len(self.layer_sizes):
            raise ValueError(f"sink_level {self.sink_level} exceeds the {len(self.layer_sizes)} recorded layers")
        return self

    @property
    def intermediate_layer_count(self) -> int:
        """Layers strictly between the source and the sink's level."""
        if self.sink_level is None:
            return len(self.layer_sizes)
        return self.sink_level - 1

    def structure(self) -> tuple[int, tuple[int, ...], bool, Optional[int]]:
        """Everything except timing; equal across repetitions of a solve."""
        return (self.total_vertices, self.layer_sizes, self.sink_reached, self.sink_level)

    def with_wall_time(self, nanoseconds: int) -> "BfsPhaseRecord":
        return self.model_copy(update={"bfs_wall_time": max(1, int(nanoseconds))})
