"""
DIMACS max-flow reader and writer.

Accepted dialect (1-based vertex ids)::

    c <comment>
    p max <vertices> <arcs>
    n <id> s
    n <id> t
    a <tail> <head> <capacity>

Exactly one problem line must precede any node or arc line. Unknown line
types are rejected unless ``strict=False``.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import IO, Optional, Union

from qflowbench.core.errors import DimacsParseError
from qflowbench.core.network import MAX_CAPACITY, Edge, FlowNetwork

logger = logging.getLogger(__name__)

DimacsSource = Union[str, bytes, IO[str], IO[bytes]]


def _as_text(source: DimacsSource) -> str:
    data = source.read() if hasattr(source, "read") else source
    if isinstance(data, bytes):
        try:
            return data.decode("ascii")
        except UnicodeDecodeError as e:
            raise DimacsParseError(f"input is not ASCII ({e.reason} at byte {e.start})") from e
    return data


def _int_field(value: str, what: str, line_number: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise DimacsParseError(f"{what} {value!r} is not an integer", line_number) from None


def parse_dimacs(source: DimacsSource, *, strict: bool = True) -> FlowNetwork:
    """
    Parse a DIMACS max-flow instance.

    Args:
        source: Text, bytes, or a readable text/binary stream.
        strict: Reject unknown line types. When False they are skipped.

    Returns:
        The network, with edges in file order.

    Raises:
        DimacsParseError: On any malformed or inconsistent line; the
            message is prefixed with the offending line number.
    """
    text = _as_text(source)

    vertex_count: Optional[int] = None
    declared_arcs = 0
    problem_line = 0
    source_vertex: Optional[int] = None
    sink_vertex: Optional[int] = None
    edges: list[Edge] = []
    last_line = 0

    for line_number, raw in enumerate(text.splitlines(), start=1):
        last_line = line_number
        fields = raw.split()
        if not fields:
            continue
        kind = fields[0]

        if kind == "c":
            continue

        if kind == "p":
            if vertex_count is not None:
                raise DimacsParseError(f"duplicate problem line (first on line {problem_line})", line_number)
            if len(fields) != 4 or fields[1] != "max":
                raise DimacsParseError("problem line must be 'p max <vertices> <arcs>'", line_number)
            vertex_count = _int_field(fields[2], "vertex count", line_number)
            declared_arcs = _int_field(fields[3], "arc count", line_number)
            if vertex_count < 2:
                raise DimacsParseError(f"vertex count must be at least 2, got {vertex_count}", line_number)
            if declared_arcs < 0:
                raise DimacsParseError(f"arc count must be non-negative, got {declared_arcs}", line_number)
            problem_line = line_number
            continue

        if kind in ("n", "a") and vertex_count is None:
            raise DimacsParseError(f"'{kind}' line before the problem line", line_number)

        if kind == "n":
            if len(fields) != 3 or fields[2] not in ("s", "t"):
                raise DimacsParseError("node line must be 'n <id> s' or 'n <id> t'", line_number)
            vertex = _int_field(fields[1], "vertex id", line_number)
            assert vertex_count is not None
            if not 1 <= vertex <= vertex_count:
                raise DimacsParseError(f"vertex id {vertex} out of range 1..{vertex_count}", line_number)
            if fields[2] == "s":
                if source_vertex is not None:
                    raise DimacsParseError("duplicate source designator", line_number)
                source_vertex = vertex
            else:
                if sink_vertex is not None:
                    raise DimacsParseError("duplicate sink designator", line_number)
                sink_vertex = vertex
            continue

        if kind == "a":
            if len(fields) != 4:
                raise DimacsParseError("arc line must be 'a <tail> <head> <capacity>'", line_number)
            tail = _int_field(fields[1], "vertex id", line_number)
            head = _int_field(fields[2], "vertex id", line_number)
            capacity = _int_field(fields[3], "capacity", line_number)
            assert vertex_count is not None
            for vertex in (tail, head):
                if not 1 <= vertex <= vertex_count:
                    raise DimacsParseError(f"vertex id {vertex} out of range 1..{vertex_count}", line_number)
            if tail == head:
                raise DimacsParseError(f"self-loop on vertex {tail}", line_number)
            if capacity < 0:
                raise DimacsParseError(f"negative capacity {capacity}", line_number)
            if capacity > MAX_CAPACITY:
                raise DimacsParseError(f"capacity {capacity} exceeds 2^63-1", line_number)
            edges.append(Edge(tail, head, capacity))
            continue

        if strict:
            raise DimacsParseError(f"unknown line type {kind!r}", line_number)
        logger.debug("Skipping unknown DIMACS line %d: %r", line_number, raw)

    if vertex_count is None:
        raise DimacsParseError("missing problem line 'p max <vertices> <arcs>'", last_line or None)
    if source_vertex is None:
        raise DimacsParseError("missing source designator 'n <id> s'", last_line)
    if sink_vertex is None:
        raise DimacsParseError("missing sink designator 'n <id> t'", last_line)
    if source_vertex == sink_vertex:
        raise DimacsParseError(f"source and sink are both vertex {source_vertex}", last_line)
    if len(edges) != declared_arcs:
        raise DimacsParseError(
            f"problem line declares {declared_arcs} arcs but {len(edges)} were found",
            problem_line,
        )

    return FlowNetwork(vertex_count, source_vertex, sink_vertex, tuple(edges))


def read_dimacs(path: Union[str, Path], *, strict: bool = True) -> FlowNetwork:
    """Parse the DIMACS file at ``path``."""
    return parse_dimacs(Path(path).read_bytes(), strict=strict)


def write_dimacs(network: FlowNetwork, comment: Optional[str] = None) -> bytes:
    """
    Serialize ``network`` as canonical DIMACS text.

    Line order is: optional comment lines, problem line, source, sink, then
    one arc line per edge in edge order. ``parse_dimacs`` of the output is
    equal to ``network``.
    """
    lines: list[str] = []
    if comment:
        lines.extend(f"c {text}".rstrip() for text in comment.splitlines())
    lines.append(f"p max {network.vertex_count} {network.edge_count}")
    lines.append(f"n {network.source} s")
    lines.append(f"n {network.sink} t")
    lines.extend(f"a {tail} {head} {capacity}" for tail, head, capacity in network.edges)
    return ("\n".join(lines) + "\n").encode("ascii")
