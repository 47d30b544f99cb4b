"""
qflowbench CLI - hybrid max-flow / quantum-BFS benchmarking.

Usage:
    qflowbench solve <file>                          - Solve a DIMACS instance, show phases
    qflowbench estimate --list-size N --marked T     - Closed-form n_Q, N_Q, G_Q
    qflowbench simulate --list-size N --marked T     - Monte Carlo check of n_Q
    qflowbench bench <dir> [options]                 - Benchmark a corpus
    qflowbench report <results.jsonl> --svg <file>   - Scatter plot of gate times
    qflowbench generate <dir>                        - Write a random DIMACS corpus
    qflowbench version                               - Show version info

Exit codes: 0 success, 1 partial or empty results, 2 usage or parse errors.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from qflowbench import __version__
from qflowbench.bench.harness import DEFAULT_PATTERN, BenchSummary, DirectoryRun, run_directory, summarize
from qflowbench.bench.report import atomic_write, read_jsonl, write_bench_outputs
from qflowbench.bench.svg import emit_svg_scatter
from qflowbench.core.config import Aggregation, RunConfig, get_config
from qflowbench.core.dimacs import read_dimacs, write_dimacs
from qflowbench.core.errors import BatchError, ConfigError, CostModelError, NetworkError, PhaseMisalignmentError
from qflowbench.core.generators import generate_corpus, generate_fig1_network
from qflowbench.flow.dinic import dinic_max_flow
from qflowbench.quantum.cost import (
    clamped_summands,
    expected_iterations_all,
    expected_iterations_one,
    gate_count,
    k_max,
    s_max,
)
from qflowbench.quantum.simulator import mc_expected_iterations

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_USAGE = 2

# Initialize CLI app and console
app = typer.Typer(
    name="qflowbench",
    help="qflowbench - Max-flow BFS phases priced as quantum searches",
    add_completion=False,
    no_args_is_help=True,
)
console = Console()


def fail(message: str, code: int = EXIT_USAGE) -> typer.Exit:
    console.print(f"[red]Error:[/red] {message}")
    return typer.Exit(code)


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level (default from QFLOWBENCH_LOG_LEVEL)"),
    verbose: int = typer.Option(0, "--verbose", "-v", count=True, help="-v for INFO, -vv for DEBUG"),
):
    """Configure logging for every command."""
    level = (log_level or get_config().log_level).upper()
    if verbose:
        level = "DEBUG" if verbose > 1 else "INFO"
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


@app.command()
def version():
    """Show version information."""
    console.print(f"[bold]qflowbench[/bold] {__version__}")
    console.print(f"[bold]Python:[/bold] {sys.version.split()[0]}")
    console.print(f"[bold]Platform:[/bold] {sys.platform}")


@app.command()
def solve(
    file: Path = typer.Argument(..., help="DIMACS max-flow file"),
    permissive: bool = typer.Option(False, "--permissive", help="Skip unknown line types instead of failing"),
):
    """Solve an instance with Dinic's algorithm and list its BFS phases."""
    try:
        network = read_dimacs(file, strict=not permissive)
    except FileNotFoundError:
        raise fail(f"File not found: {file}")
    except (NetworkError, OSError) as e:
        raise fail(f"{file}: {e}")

    result = dinic_max_flow(network)
    console.print(f"max flow = {result.flow_value}")

    table = Table(title=f"BFS phases ({network.vertex_count} vertices, {network.edge_count} edges)")
    table.add_column("Phase", justify="right")
    table.add_column("Layer sizes", style="cyan")
    table.add_column("Sink level", justify="right")
    table.add_column("BFS time (ns)", justify="right", style="green")
    for record in result.phases:
        table.add_row(
            str(record.phase_index),
            " ".join(map(str, record.layer_sizes)) or "-",
            str(record.sink_level) if record.sink_reached else "unreached",
            str(record.bfs_wall_time),
        )
    console.print(table)


@app.command()
def estimate(
    list_size: int = typer.Option(..., "--list-size", "-L", help="Searched list size |L|"),
    marked: int = typer.Option(..., "--marked", "-t", help="Marked items t"),
    epsilon: float = typer.Option(0.1, "--epsilon", help="QSearch failure probability"),
    strict: bool = typer.Option(False, "--strict-t0", help="Charge a failing run when t = 0"),
    as_json: bool = typer.Option(False, "--json", help="Machine-readable output"),
):
    """Evaluate the closed-form iteration and gate counts."""
    try:
        values = {
            "list_size": list_size,
            "marked": marked,
            "k_max": k_max(list_size),
            "s_max": s_max(epsilon),
            "n_Q": expected_iterations_one(list_size, marked) if marked else None,
            "N_Q": expected_iterations_all(list_size, marked),
            "clamped_summands": clamped_summands(list_size, marked),
            "G_Q": gate_count(list_size, marked, strict=strict, epsilon=epsilon),
        }
    except CostModelError as e:
        raise fail(str(e))

    if as_json:
        typer.echo(json.dumps(values, indent=2))
        return

    table = Table(title=f"QSearch cost for |L| = {list_size}, t = {marked}")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", justify="right", style="green")
    for name, value in values.items():
        table.add_row(name, "-" if value is None else f"{value:.10g}" if isinstance(value, float) else str(value))
    console.print(table)


@app.command()
def simulate(
    list_size: int = typer.Option(..., "--list-size", "-L", help="Searched list size |L|"),
    marked: int = typer.Option(..., "--marked", "-t", help="Marked items t (at least 1)"),
    trials: int = typer.Option(100_000, "--trials", "-n", help="Monte Carlo trials (at least 1000)"),
    seed: int = typer.Option(0, "--seed", help="RNG seed"),
    epsilon: float = typer.Option(0.1, "--epsilon", help="QSearch failure probability"),
):
    """Compare the closed-form n_Q with a seeded Monte Carlo run."""
    try:
        closed = expected_iterations_one(list_size, marked)
        estimate_ = mc_expected_iterations(list_size, marked, epsilon, trials, seed)
    except CostModelError as e:
        raise fail(str(e))

    console.print(f"Monte Carlo mean  = {estimate_.mean:.6f} ± {estimate_.standard_error:.6f} ({trials} trials, seed {seed}, {estimate_.rng})")
    console.print(f"first-round mean  = {estimate_.first_round_mean:.6f} ± {estimate_.first_round_standard_error:.6f}")
    console.print(f"closed form n_Q   = {closed:.6f}")
    console.print(f"success rate      = {estimate_.success_rate:.4%}")
    console.print(f"relative deviation = {estimate_.relative_deviation(closed):.3%}")


def _print_summary(summary: BenchSummary) -> None:
    table = Table(title="Benchmark summary")
    table.add_column("Metric", style="cyan")
    table.add_column("Value", justify="right", style="green")
    for name, value in summary.model_dump().items():
        table.add_row(name, "-" if value is None else f"{value:.3e}" if isinstance(value, float) else str(value))
    console.print(table)


@app.command()
def bench(
    directory: Path = typer.Argument(..., help="Directory of DIMACS instances"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", envvar="QFLOWBENCH_WORKERS", help="Parallel instance workers"),
    reps: Optional[int] = typer.Option(None, "--reps", help="Timing repetitions per instance"),
    aggregation: Optional[Aggregation] = typer.Option(None, "--aggregation", help="Rows to emit in results.csv"),
    include_terminal_bfs: bool = typer.Option(False, "--include-terminal-bfs", help="Price the final BFS that misses the sink"),
    strict_t0: bool = typer.Option(False, "--strict-t0", help="Charge a failing search for each priced phase"),
    threshold: Optional[float] = typer.Option(None, "--threshold", help="Reference gate time in seconds"),
    epsilon: Optional[float] = typer.Option(None, "--epsilon", help="QSearch failure probability"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed recorded with every result"),
    pattern: str = typer.Option(DEFAULT_PATTERN, "--pattern", help="Glob for instance files"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory (default: the corpus directory)"),
    config_file: Optional[Path] = typer.Option(None, "--config", "-c", help="YAML or JSON RunConfig file"),
):
    """Benchmark every instance in a directory and write results.csv / results.jsonl / summary.json."""
    if not directory.is_dir():
        raise fail(f"Not a directory: {directory}")

    overrides = {
        "parallel_workers": workers,
        "timing_repetitions": reps,
        "aggregation": aggregation,
        "threshold": threshold,
        "epsilon": epsilon,
        "seed": seed,
    }
    flags = {"include_terminal_bfs": include_terminal_bfs, "strict_t0_cost": strict_t0}
    try:
        base = RunConfig.from_file(config_file) if config_file else RunConfig()
        config = base.with_overrides(
            **{k: v for k, v in overrides.items() if v is not None},
            **{k: v for k, v in flags.items() if v},
        )
    except (ConfigError, OSError) as e:
        raise fail(str(e))

    try:
        run = run_directory(directory, pattern, config)
    except PhaseMisalignmentError as e:
        raise fail(str(e))
    except BatchError as e:
        console.print(f"[red]Error:[/red] {e}")
        run = DirectoryRun()
        failed = True
    else:
        failed = False

    summary = summarize(run.results, config.threshold, len(run.skipped)) if run.results else None
    outputs = write_bench_outputs(run, out or directory, config.aggregation, summary)
    console.print(f"Wrote {outputs.csv} and {outputs.jsonl}")

    if summary is None:
        if not failed:
            console.print("[yellow]Warning:[/yellow] no instances benchmarked")
        raise typer.Exit(EXIT_PARTIAL)
    _print_summary(summary)
    for skipped in run.skipped:
        console.print(f"[yellow]Skipped[/yellow] {skipped.path}: {skipped.reason}")
    raise typer.Exit(run.exit_code)


@app.command()
def report(
    results: Path = typer.Argument(..., help="results.jsonl written by bench"),
    svg: Optional[Path] = typer.Option(None, "--svg", help="Write a scatter plot to this file"),
    per_phase: bool = typer.Option(False, "--per-phase", help="Plot every priced phase instead of instance aggregates"),
    threshold: Optional[float] = typer.Option(None, "--threshold", help="Reference gate time in seconds"),
):
    """Summarize a results file and optionally plot it."""
    try:
        loaded = read_jsonl(results)
    except FileNotFoundError:
        raise fail(f"File not found: {results}")
    except (ValidationError, OSError) as e:
        raise fail(f"{results}: {e}")

    threshold = threshold if threshold is not None else get_config().threshold
    if not threshold > 0:
        raise fail(f"threshold must be positive, got {threshold}")
    if not loaded:
        raise fail(f"{results} holds no results", EXIT_PARTIAL)
    _print_summary(summarize(loaded, threshold))

    if svg is not None:
        try:
            document = emit_svg_scatter(loaded, threshold, per_phase=per_phase)
        except ValueError as e:
            raise fail(str(e), EXIT_PARTIAL)
        atomic_write(svg, document)
        console.print(f"Wrote {svg}")


@app.command()
def generate(
    directory: Path = typer.Argument(..., help="Directory to write .max files into"),
    count: int = typer.Option(10, "--count", "-n", help="Number of instances"),
    min_vertices: int = typer.Option(50, "--min-vertices", help="Smallest instance"),
    max_vertices: int = typer.Option(1000, "--max-vertices", help="Largest instance"),
    edges_per_vertex: int = typer.Option(3, "--edges-per-vertex", help="Edge density"),
    cmax: int = typer.Option(100, "--cmax", help="Largest capacity"),
    seed: int = typer.Option(0, "--seed", help="Corpus seed"),
    fig1: bool = typer.Option(False, "--fig1", help="Also write the 11-vertex worked example"),
):
    """Write a log-spaced random corpus in DIMACS format."""
    try:
        corpus = generate_corpus(count, min_vertices, max_vertices, seed, edges_per_vertex, cmax)
    except NetworkError as e:
        raise fail(str(e))

    directory.mkdir(parents=True, exist_ok=True)
    for instance_id, network in corpus:
        atomic_write(directory / f"{instance_id}.max", write_dimacs(network, comment=f"{instance_id} seed={seed}"))
    if fig1:
        atomic_write(directory / "fig1.max", write_dimacs(generate_fig1_network(), comment="worked example"))
    console.print(f"Wrote {len(corpus) + int(fig1)} instances to {directory}")


if __name__ == "__main__":
    app()
