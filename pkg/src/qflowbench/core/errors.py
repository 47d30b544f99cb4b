"""
Exception hierarchy for qflowbench.

Every error raised on purpose by the library derives from
``QFlowBenchError`` so callers (and the CLI) can catch one type.
"""

from __future__ import annotations

from typing import Optional


class QFlowBenchError(Exception):
    """Base class for all qflowbench errors."""


class NetworkError(QFlowBenchError, ValueError):
    """A flow network violates its invariants."""


class DimacsParseError(NetworkError):
    """
    Malformed DIMACS max-flow input.

    Attributes:
        line_number: 1-based line of the offending input, if known.
        reason: Human-readable description without the location prefix.
    """

    def __init__(self, reason: str, line_number: Optional[int] = None) -> None:
        self.reason = reason
        self.line_number = line_number
        if line_number is None:
            super().__init__(reason)
        else:
            super().__init__(f"line {line_number}: {reason}")


class ConfigError(QFlowBenchError, ValueError):
    """Invalid run configuration."""


class CostModelError(QFlowBenchError, ValueError):
    """Arguments outside the domain of the quantum cost formulas."""


class PhaseMisalignmentError(QFlowBenchError, RuntimeError):
    """Timing repetitions of one instance produced different phase structures."""


class BatchError(QFlowBenchError, RuntimeError):
    """A directory run could not produce any result."""
