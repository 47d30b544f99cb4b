"""
Command Line Interface for qflowbench.

Provides commands for solving instances, evaluating the cost model,
benchmarking corpora and plotting results.
"""

from qflowbench.cli.main import app

__all__ = ["app"]
