"""Scatter report over a benchmark CSV: one solver's times against another's."""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Dict, List, Tuple


class ReportError(Exception):
    pass


REQUIRED_FIELDS = ("instance", "solver", "time_ms", "status")


def load_rows(path: str) -> List[dict]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        missing = [f for f in REQUIRED_FIELDS if f not in fields]
        if missing:
            raise ReportError(f"csv is missing columns: {', '.join(missing)}")
        return list(reader)


def _per_solver(rows: List[dict], solver: str) -> Dict[str, Tuple[float, str]]:
    out = {}
    for row in rows:
        if row["solver"] == solver:
            out[row["instance"]] = (float(row["time_ms"]), row["status"])
    return out


def _ticks(lo: float, hi: float, log: bool) -> List[float]:
    if log:
        first = math.floor(math.log10(lo))
        last = math.ceil(math.log10(hi))
        return [10.0 ** e for e in range(first, last + 1)]
    step = (hi - lo) / 4 or 1.0
    return [lo + i * step for i in range(5)]


def _fmt(x: float) -> str:
    return f"{x:g}"


def make_report(
    rows: List[dict], x_solver: str, y_solver: str, log: bool = False
) -> Tuple[str, str]:
    """Build (svg text, summary text) comparing two solvers instance by instance."""
    xs = _per_solver(rows, x_solver)
    ys = _per_solver(rows, y_solver)
    if not xs:
        raise ReportError(f"no rows for solver {x_solver}")
    if not ys:
        raise ReportError(f"no rows for solver {y_solver}")
    shared = sorted(set(xs) & set(ys))
    points = []
    for inst in shared:
        tx, sx = xs[inst]
        ty, sy = ys[inst]
        if sx == "error" or sy == "error":
            continue
        points.append((tx, ty, sx == "ok" and sy == "ok"))
    completed = [(tx, ty) for tx, ty, both in points if both]

    size, margin = 560, 70
    inner = size - 2 * margin
    values = [v for tx, ty, _ in points for v in (tx, ty)] or [1.0]
    lo, hi = min(values), max(values)
    if log:
        lo = max(lo, 1e-3)
        hi = max(hi, lo * 10)
        span = math.log10(hi) - math.log10(lo)
        lo10 = math.log10(lo)

        def scale(v: float) -> float:
            return (math.log10(max(v, lo)) - lo10) / span
    else:
        if hi <= lo:
            hi = lo + 1.0
        span = hi - lo

        def scale(v: float) -> float:
            return (v - lo) / span

    def px(v: float) -> float:
        return margin + scale(v) * inner

    def py(v: float) -> float:
        return size - margin - scale(v) * inner

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="{margin}" y1="{size - margin}" x2="{size - margin}" '
        f'y2="{size - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{size - margin}" '
        f'stroke="black"/>',
        f'<line x1="{px(lo)}" y1="{py(lo)}" x2="{px(hi)}" y2="{py(hi)}" '
        f'stroke="#999" stroke-dasharray="4 3"/>',
    ]
    for t in _ticks(lo, hi, log):
        if t < lo or t > hi:
            continue
        x, y = px(t), py(t)
        parts.append(
            f'<line x1="{x:.1f}" y1="{size - margin}" x2="{x:.1f}" '
            f'y2="{size - margin + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x:.1f}" y="{size - margin + 18}" font-size="11" '
            f'text-anchor="middle">{_fmt(t)}</text>'
        )
        parts.append(
            f'<line x1="{margin - 5}" y1="{y:.1f}" x2="{margin}" y2="{y:.1f}" '
            f'stroke="black"/>'
        )
        parts.append(
            f'<text x="{margin - 8}" y="{y + 4:.1f}" font-size="11" '
            f'text-anchor="end">{_fmt(t)}</text>'
        )
    parts.append(
        f'<text x="{size / 2}" y="{size - 20}" font-size="13" '
        f'text-anchor="middle">{x_solver} time (ms)</text>'
    )
    parts.append(
        f'<text x="18" y="{size / 2}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 18 {size / 2})">{y_solver} time (ms)</text>'
    )
    for tx, ty, both in points:
        x, y = px(tx), py(ty)
        if both:
            parts.append(
                f'<circle cx="{x:.1f}" cy="{y:.1f}" r="4" fill="#4477aa" '
                f'fill-opacity="0.7"/>'
            )
        else:
            parts.append(
                f'<path d="M {x - 4:.1f} {y - 4:.1f} L {x + 4:.1f} {y + 4:.1f} '
                f'M {x - 4:.1f} {y + 4:.1f} L {x + 4:.1f} {y - 4:.1f}" '
                f'stroke="#cc3311" stroke-width="1.5"/>'
            )
    parts.append("</svg>")
    svg = "\n".join(parts) + "\n"

    lines = [f"rows {len(rows)}"]
    lines.append(f"instances shared by both solvers {len(shared)}, mutually completed {len(completed)}")
    for tag, data, idx in ((x_solver, xs, 0), (y_solver, ys, 1)):
        timeouts = sum(1 for t, s in data.values() if s == "timeout")
        errors = sum(1 for t, s in data.values() if s == "error")
        if completed:
            mean = sum(p[idx] for p in completed) / len(completed)
            mean_txt = f"mean {mean:.3f} ms over mutually completed"
        else:
            mean_txt = "no mutually completed instances"
        lines.append(f"{tag}: {timeouts} timeouts, {errors} errors, {mean_txt}")
    return svg, "\n".join(lines) + "\n"


def write_report(
    csv_path: str, x_solver: str, y_solver: str, out_path: str, log: bool = False
) -> str:
    rows = load_rows(csv_path)
    svg, summary = make_report(rows, x_solver, y_solver, log=log)
    Path(out_path).write_text(svg)
    return summary
