"""
Log-log scatter of required gate time against instance size, as SVG.

The document has a fixed 800x600 viewBox, base-10 axes with decade ticks
and a dashed rule at the gate-time threshold. Output is byte-for-byte
deterministic for a given input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from jinja2 import Environment

from qflowbench.bench.harness import InstanceResult
from qflowbench.core.config import GATE_TIME_RECORD

WIDTH, HEIGHT = 800, 600
PLOT_LEFT, PLOT_RIGHT = 80, 780
PLOT_TOP, PLOT_BOTTOM = 20, 540

_TEMPLATE = """\
<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {{ width }} {{ height }}" width="{{ width }}" height="{{ height }}" font-family="sans-serif" font-size="12">
<title>{{ title }}</title>
<rect x="{{ left }}" y="{{ top }}" width="{{ right - left }}" height="{{ bottom - top }}" fill="none" stroke="#000000"/>
{% for tick in x_ticks %}
<line x1="{{ tick.pos }}" y1="{{ bottom }}" x2="{{ tick.pos }}" y2="{{ bottom + 6 }}" stroke="#000000"/>
<text x="{{ tick.pos }}" y="{{ bottom + 22 }}" text-anchor="middle">{{ tick.label }}</text>
{% endfor %}
{% for tick in y_ticks %}
<line x1="{{ left - 6 }}" y1="{{ tick.pos }}" x2="{{ left }}" y2="{{ tick.pos }}" stroke="#000000"/>
<text x="{{ left - 10 }}" y="{{ tick.pos }}" text-anchor="end" dominant-baseline="middle">{{ tick.label }}</text>
{% endfor %}
<text x="{{ (left + right) // 2 }}" y="{{ height - 10 }}" text-anchor="middle">vertex count</text>
<text x="20" y="{{ (top + bottom) // 2 }}" text-anchor="middle" transform="rotate(-90 20 {{ (top + bottom) // 2 }})">required gate time (s)</text>
<line x1="{{ left }}" y1="{{ threshold_y }}" x2="{{ right }}" y2="{{ threshold_y }}" stroke="#d62728" stroke-dasharray="6 4"/>
{% for point in points %}
<circle cx="{{ point.x }}" cy="{{ point.y }}" r="3" fill="#1f77b4"><title>{{ point.label }}</title></circle>
{% endfor %}
</svg>
"""

_environment = Environment(autoescape=True, trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)
_template = _environment.from_string(_TEMPLATE)


@dataclass(frozen=True)
class _Tick:
    pos: str
    label: str


@dataclass(frozen=True)
class _Point:
    x: str
    y: str
    label: str


@dataclass(frozen=True)
class LogAxis:
    """Maps positive values onto ``[start, end]`` pixels over whole decades."""

    low_decade: int
    high_decade: int
    start: float
    end: float

    @classmethod
    def covering(cls, values: Iterable[float], start: float, end: float) -> "LogAxis":
        # Rounding keeps exact powers of ten on their own decade.
        logs = [round(math.log10(v), 9) for v in values]
        low, high = math.floor(min(logs)), math.ceil(max(logs))
        if low == high:
            high += 1
        return cls(low, high, start, end)

    def __call__(self, value: float) -> float:
        fraction = (math.log10(value) - self.low_decade) / (self.high_decade - self.low_decade)
        return self.start + fraction * (self.end - self.start)

    def ticks(self) -> list[_Tick]:
        return [_Tick(_px(self(10.0**k)), f"1e{k}") for k in range(self.low_decade, self.high_decade + 1)]


def _px(value: float) -> str:
    return f"{value:.2f}"


def scatter_points(results: Iterable[InstanceResult], per_phase: bool = False) -> list[tuple[int, float, str]]:
    """``(vertex_count, tau, label)`` for every plottable result or priced phase."""
    points = []
    for result in results:
        if per_phase:
            for index, tau in zip(result.priced_phase_indices, result.per_phase_tau):
                if tau is not None and tau > 0:
                    points.append((result.vertex_count, tau, f"{result.instance_id} phase {index}: {tau:.3e} s"))
        elif result.aggregate_tau is not None and result.aggregate_tau > 0:
            tau = result.aggregate_tau
            points.append((result.vertex_count, tau, f"{result.instance_id}: {tau:.3e} s"))
    return points


def emit_svg_scatter(
    results: Iterable[InstanceResult],
    threshold: float = GATE_TIME_RECORD,
    per_phase: bool = False,
    title: str = "Required gate time vs vertex count",
) -> str:
    """
    Render the scatter plot.

    Raises:
        ValueError: If no result has a positive gate time to plot.
    """
    points = scatter_points(results, per_phase)
    if not points:
        raise ValueError("no plottable points: every gate time is missing")
    if not threshold > 0:
        raise ValueError(f"threshold must be positive, got {threshold}")

    x_axis = LogAxis.covering((p[0] for p in points), PLOT_LEFT, PLOT_RIGHT)
    y_axis = LogAxis.covering([*(p[1] for p in points), threshold], PLOT_BOTTOM, PLOT_TOP)

    return _template.render(
        width=WIDTH,
        height=HEIGHT,
        left=PLOT_LEFT,
        right=PLOT_RIGHT,
        top=PLOT_TOP,
        bottom=PLOT_BOTTOM,
        title=title,
        x_ticks=x_axis.ticks(),
        y_ticks=y_axis.ticks(),
        threshold_y=_px(y_axis(threshold)),
        points=[_Point(_px(x_axis(x)), _px(y_axis(y)), label) for x, y, label in points],
    )
