"""
Configuration management for qflowbench.

This module provides a centralized way to manage benchmark run settings:
timing methodology, cost-model switches, parallelism and logging.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Union

import yaml
from dotenv import load_dotenv

from qflowbench.core.errors import ConfigError

# Load .env file if present
load_dotenv()

# Fastest single gate operation demonstrated so far, in seconds.
GATE_TIME_RECORD = 6.5e-9


class Aggregation(str, Enum):
    """Which required-gate-time series a run reports."""

    PER_PHASE = "per_phase"
    PER_INSTANCE = "per_instance"
    BOTH = "both"

    def __str__(self) -> str:
        return self.value

    @property
    def includes_phases(self) -> bool:
        return self in (Aggregation.PER_PHASE, Aggregation.BOTH)

    @property
    def includes_instances(self) -> bool:
        return self in (Aggregation.PER_INSTANCE, Aggregation.BOTH)


_INT_FIELDS = ("timing_repetitions", "parallel_workers", "seed")
_FLOAT_FIELDS = ("epsilon", "threshold")
_BOOL_FIELDS = ("warmup", "include_terminal_bfs", "strict_t0_cost")


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class RunConfig:
    """
    Settings for one benchmark run.

    Defaults come from environment variables where listed, otherwise from
    the values below.

    Environment Variables:
        QFLOWBENCH_WORKERS: Default number of parallel instance workers
        QFLOWBENCH_SEED: Default seed for generated corpora
        QFLOWBENCH_REPS: Default timing repetitions per instance
        QFLOWBENCH_LOG_LEVEL: Logging level for the CLI

    Example:
        >>> config = RunConfig(timing_repetitions=3)
        >>> strict = config.with_overrides(strict_t0_cost=True)
    """

    timing_repetitions: int = field(default_factory=lambda: _env_int("QFLOWBENCH_REPS", 5))
    warmup: bool = True
    aggregation: Aggregation = Aggregation.BOTH
    include_terminal_bfs: bool = False
    strict_t0_cost: bool = False
    epsilon: float = 0.1
    threshold: float = GATE_TIME_RECORD
    parallel_workers: int = field(default_factory=lambda: _env_int("QFLOWBENCH_WORKERS", 1))
    seed: int = field(default_factory=lambda: _env_int("QFLOWBENCH_SEED", 0))
    log_level: str = field(default_factory=lambda: os.getenv("QFLOWBENCH_LOG_LEVEL", "WARNING"))

    def __post_init__(self) -> None:
        self._check_types()
        try:
            object.__setattr__(self, "aggregation", Aggregation(self.aggregation))
        except ValueError:
            choices = ", ".join(a.value for a in Aggregation)
            raise ConfigError(f"aggregation must be one of {choices}, got {self.aggregation!r}") from None

        if self.timing_repetitions < 1:
            raise ConfigError(f"timing_repetitions must be positive, got {self.timing_repetitions}")
        if self.parallel_workers < 1:
            raise ConfigError(f"parallel_workers must be positive, got {self.parallel_workers}")
        if not 0.0 < self.epsilon < 1.0:
            raise ConfigError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not self.threshold > 0.0:
            raise ConfigError(f"threshold must be positive, got {self.threshold}")
        if not -(2**63) <= self.seed < 2**64:
            raise ConfigError(f"seed must fit in 64 bits, got {self.seed}")

    def _check_types(self) -> None:
        # bool is an int subclass, so it is rejected explicitly for numeric fields.
        for name in _INT_FIELDS:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
        for name in _FLOAT_FIELDS:
            value = getattr(self, name)
            if isinstance(value, str):
                # YAML reads exponents without a dot, such as 1e-9, as strings.
                try:
                    value = float(value)
                except ValueError:
                    raise ConfigError(f"{name} must be a number, got {value!r}") from None
            elif isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"{name} must be a number, got {value!r}")
            object.__setattr__(self, name, float(value))
        for name in _BOOL_FIELDS:
            value = getattr(self, name)
            if not isinstance(value, bool):
                raise ConfigError(f"{name} must be true or false, got {value!r}")
        if not isinstance(self.log_level, str):
            raise ConfigError(f"log_level must be a string, got {self.log_level!r}")

    def with_overrides(self, **changes: Any) -> "RunConfig":
        """Return a validated copy with ``changes`` applied (fluent API)."""
        unknown = set(changes) - {f.name for f in dataclasses.fields(self)}
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        """Create config from dictionary; missing keys keep their defaults."""
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**data)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "RunConfig":
        """Load config from YAML or JSON file."""
        path = Path(path)
        content = path.read_text()

        is_yaml = path.suffix in [".yaml", ".yml"]
        try:
            data = (yaml.safe_load(content) or {}) if is_yaml else json.loads(content)
        except (yaml.YAMLError, json.JSONDecodeError) as e:
            raise ConfigError(f"{path} is not valid {'YAML' if is_yaml else 'JSON'}: {e}") from None

        if not isinstance(data, dict):
            raise ConfigError(f"{path} must contain a mapping at top level")
        return cls.from_dict(data)

    def to_dict(self) -> dict[str, Any]:
        """Convert config to a JSON-friendly dictionary."""
        data = dataclasses.asdict(self)
        data["aggregation"] = self.aggregation.value
        return data


# Global default configuration
_default_config: Optional[RunConfig] = None


def get_config() -> RunConfig:
    """Get the global default configuration."""
    global _default_config
    if _default_config is None:
        _default_config = RunConfig()
    return _default_config


def set_config(config: RunConfig) -> None:
    """Set the global default configuration."""
    global _default_config
    _default_config = config
