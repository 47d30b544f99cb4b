"""Benchmark harness and report emitters."""

from qflowbench.bench.harness import (
    BenchSummary,
    DirectoryRun,
    InstanceResult,
    SkippedInstance,
    run_directory,
    run_instance,
    summarize,
)
from qflowbench.bench.report import CSV_HEADER, CsvRow, read_jsonl, write_bench_outputs, write_csv, write_jsonl
from qflowbench.bench.svg import emit_svg_scatter

__all__ = [
    "BenchSummary",
    "DirectoryRun",
    "InstanceResult",
    "SkippedInstance",
    "run_directory",
    "run_instance",
    "summarize",
    "CSV_HEADER",
    "CsvRow",
    "read_jsonl",
    "write_bench_outputs",
    "write_csv",
    "write_jsonl",
    "emit_svg_scatter",
]
