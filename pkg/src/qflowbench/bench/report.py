"""
CSV, JSONL and summary emitters for benchmark results.

The CSV is the flat analysis view (one row per priced phase and/or one
aggregate row per instance); the JSONL keeps every ``InstanceResult`` in
full. All files are written atomically.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from dataclasses import astuple, dataclass
from pathlib import Path
from typing import Iterable, Optional, Union

from qflowbench.bench.harness import BenchSummary, DirectoryRun, InstanceResult
from qflowbench.core.config import Aggregation

CSV_HEADER = (
    "instance_id",
    "vertex_count",
    "edge_count",
    "flow_value",
    "phase_index",
    "bfs_time_ns",
    "gates",
    "tau_seconds",
    "verdict",
)

AGGREGATE = "aggregate"

RESULTS_CSV = "results.csv"
RESULTS_JSONL = "results.jsonl"
SUMMARY_JSON = "summary.json"


def format_float(value: Optional[float]) -> str:
    """Up to 17 significant digits, trailing zeros dropped; empty for missing values."""
    return "" if value is None else format(value, ".17g")


@dataclass(frozen=True)
class CsvRow:
    instance_id: str
    vertex_count: int
    edge_count: int
    flow_value: int
    phase_index: Union[int, str]
    bfs_time_ns: int
    gates: float
    tau_seconds: Optional[float]
    verdict: Optional[str]

    def as_fields(self) -> list[str]:
        fields = []
        for value in astuple(self):
            if isinstance(value, float):
                fields.append(format_float(value))
            elif value is None:
                fields.append("")
            else:
                fields.append(str(value))
        return fields


def csv_rows(result: InstanceResult, aggregation: Aggregation = Aggregation.BOTH) -> list[CsvRow]:
    """Rows for one result: priced phases first, then the aggregate."""
    common = (result.instance_id, result.vertex_count, result.edge_count, result.flow_value)
    rows = []
    if aggregation.includes_phases:
        for index, gates, tau, verdict in zip(
            result.priced_phase_indices, result.per_phase_gates, result.per_phase_tau, result.per_phase_verdicts
        ):
            rows.append(CsvRow(*common, index, result.phases[index].bfs_wall_time, gates, tau, verdict))
    if aggregation.includes_instances:
        rows.append(
            CsvRow(*common, AGGREGATE, result.total_bfs_time, result.total_gates, result.aggregate_tau, result.verdict)
        )
    return rows


def render_csv(results: Iterable[InstanceResult], aggregation: Aggregation = Aggregation.BOTH) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for result in results:
        writer.writerows(row.as_fields() for row in csv_rows(result, aggregation))
    return buffer.getvalue()


def render_jsonl(results: Iterable[InstanceResult]) -> str:
    return "".join(result.model_dump_json() + "\n" for result in results)


def atomic_write(path: Union[str, Path], content: Union[str, bytes]) -> Path:
    """Write ``content`` to a temporary sibling, then rename it over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = content.encode("utf-8") if isinstance(content, str) else content
    fd, temp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(temp_name, path)
    except BaseException:
        Path(temp_name).unlink(missing_ok=True)
        raise
    return path


def write_csv(
    results: Iterable[InstanceResult],
    path: Union[str, Path],
    aggregation: Aggregation = Aggregation.BOTH,
) -> Path:
    return atomic_write(path, render_csv(results, aggregation))


def write_jsonl(results: Iterable[InstanceResult], path: Union[str, Path]) -> Path:
    return atomic_write(path, render_jsonl(results))


def read_jsonl(path: Union[str, Path]) -> list[InstanceResult]:
    """Load results written by :func:`write_jsonl`."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [InstanceResult.model_validate_json(line) for line in lines if line.strip()]


def write_summary(summary: BenchSummary, path: Union[str, Path]) -> Path:
    return atomic_write(path, summary.model_dump_json(indent=2) + "\n")


@dataclass(frozen=True)
class BenchOutputs:
    csv: Path
    jsonl: Path
    summary: Optional[Path]


def write_bench_outputs(
    run: DirectoryRun,
    out_dir: Union[str, Path],
    aggregation: Aggregation = Aggregation.BOTH,
    summary: Optional[BenchSummary] = None,
) -> BenchOutputs:
    """Write results.csv, results.jsonl and, when given, summary.json into ``out_dir``."""
    out = Path(out_dir)
    return BenchOutputs(
        csv=write_csv(run.results, out / RESULTS_CSV, aggregation),
        jsonl=write_jsonl(run.results, out / RESULTS_JSONL),
        summary=write_summary(summary, out / SUMMARY_JSON) if summary is not None else None,
    )
