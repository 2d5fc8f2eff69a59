"""Report emission: CSV, JSON and static SVG charts.

CSV schema: `scenario,parameter,repetition,wall_time_ms,key,value` with one
`time` row per measurement plus one row per aux key. The `no_timing` golden
mode zeroes every wall-clock field so reports are byte-identical across
runs under a deterministic seed.
"""

from __future__ import annotations

import json
import os

from ..errors import UsageError
from .measure import median

CSV_HEADER = "scenario,parameter,repetition,wall_time_ms,key,value"


def _rows(measurements, no_timing: bool):
    for m in measurements:
        t = 0 if no_timing else m.wall_time_ms
        yield (m.scenario, m.parameter, m.repetition, t, "time", t)
        for key in sorted(m.aux):
            yield (m.scenario, m.parameter, m.repetition, t, key, m.aux[key])


def render_csv(measurements, no_timing: bool = False) -> str:
    if not measurements:
        raise UsageError("no measurements to report")
    lines = [CSV_HEADER]
    for row in _rows(measurements, no_timing):
        lines.append(",".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def render_json(measurements, no_timing: bool = False) -> str:
    if not measurements:
        raise UsageError("no measurements to report")
    arr = [
        {
            "scenario": m.scenario,
            "parameter": m.parameter,
            "repetition": m.repetition,
            "wall_time_ms": 0 if no_timing else m.wall_time_ms,
            "aux": {k: str(v) if not isinstance(v, int) else v for k, v in sorted(m.aux.items())},
        }
        for m in measurements
    ]
    return json.dumps(arr, indent=2, sort_keys=True) + "\n"


def _svg_chart(title: str, points) -> str:
    """Minimal static line chart; points are (parameter, value) pairs."""
    width, height, pad = 480, 280, 48
    xs = [p for p, _ in points]
    ys = [v for _, v in points]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = 0, max(max(ys), 1)
    span_x = max(x_hi - x_lo, 1)

    def sx(x):
        return pad + (x - x_lo) * (width - 2 * pad) / span_x

    def sy(y):
        return height - pad - (y - y_lo) * (height - 2 * pad) / (y_hi - y_lo or 1)

    poly = " ".join(f"{sx(x):.1f},{sy(y):.1f}" for x, y in points)
    labels = []
    for x, y in points:
        labels.append(
            f'<circle cx="{sx(x):.1f}" cy="{sy(y):.1f}" r="3" fill="#1f6feb"/>'
            f'<text x="{sx(x):.1f}" y="{height - pad + 16}" font-size="11" text-anchor="middle">{x}</text>'
        )
    return f"""<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">
<rect width="{width}" height="{height}" fill="white"/>
<text x="{width // 2}" y="20" font-size="13" text-anchor="middle">{title}</text>
<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="#666"/>
<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="#666"/>
<text x="{pad - 6}" y="{pad}" font-size="11" text-anchor="end">{y_hi:g}</text>
<text x="{pad - 6}" y="{height - pad}" font-size="11" text-anchor="end">0</text>
<polyline points="{poly}" fill="none" stroke="#1f6feb" stroke-width="2"/>
{os.linesep.join(labels)}
</svg>
"""


def render_svgs(measurements, no_timing: bool = False) -> dict:
    """One SVG per scenario: median value over the scenario parameter."""
    if not measurements:
        raise UsageError("no measurements to report")
    by_scenario = {}
    for m in measurements:
        by_scenario.setdefault(m.scenario, []).append(m)
    out = {}
    for scenario, ms in sorted(by_scenario.items()):
        params = sorted({m.parameter for m in ms})
        points = []
        for p in params:
            vals = [
                0 if no_timing else m.wall_time_ms
                for m in ms
                if m.parameter == p and "budget_exceeded" not in m.aux
            ]
            if vals:
                points.append((p, median(vals)))
        if not points:
            points = [(p, 0) for p in params]
        out[scenario] = _svg_chart(f"{scenario}: median wall time (ms)", points)
    return out


def emit_report(measurements, formats, out_dir, no_timing: bool = False):
    """Write the requested formats under out_dir; returns written paths."""
    if not measurements:
        raise UsageError("no measurements to report")
    if isinstance(formats, str):
        formats = [formats]
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for fmt in formats:
        if fmt == "csv":
            path = os.path.join(out_dir, "report.csv")
            with open(path, "w") as fh:
                fh.write(render_csv(measurements, no_timing))
            written.append(path)
        elif fmt == "json":
            path = os.path.join(out_dir, "report.json")
            with open(path, "w") as fh:
                fh.write(render_json(measurements, no_timing))
            written.append(path)
        elif fmt == "svg":
            for scenario, svg in render_svgs(measurements, no_timing).items():
                path = os.path.join(out_dir, f"chart_{scenario}.svg")
                with open(path, "w") as fh:
                    fh.write(svg)
                written.append(path)
        else:
            raise UsageError(f"unknown report format {fmt!r}")
    return written
