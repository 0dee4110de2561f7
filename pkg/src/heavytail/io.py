"""CSV ingestion/emission and a tiny dependency-free SVG plotter."""

from __future__ import annotations

import csv
import io as _io
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .errors import ParseError

# Plain decimal or scientific notation; no separators, no inf/nan.
_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


def _parse_number(text: str, where: str) -> float:
    cell = text.strip()
    if not _NUMBER.fullmatch(cell):
        raise ParseError(f"{where}: not a number: {text!r}")
    return float(cell)


def ingest_csv(path: str | Path, column: str | None = None) -> np.ndarray:
    """Read one numeric column.

    A headerless file is read as one value per line (commas inside a line
    are rejected, not split).  Otherwise the first non-blank line is the
    header and ``column`` picks the field; it may be omitted for a
    single-column header.  Blank lines are skipped.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8-sig") as fh:
        lines = [(i, line.rstrip("\r\n")) for i, line in enumerate(fh, start=1)]
    lines = [(i, line) for i, line in lines if line.strip()]
    if not lines:
        return np.empty(0)

    first_no, first = lines[0]
    if _NUMBER.fullmatch(first.strip()):
        if column is not None:
            raise ParseError(f"{path}: column {column!r} requested but the file has no header")
        return np.array([_parse_number(line, f"{path}:{i}") for i, line in lines])

    header = next(csv.reader([first]))
    names = [h.strip() for h in header]
    if column is None:
        if len(names) != 1:
            raise ParseError(f"{path}: {len(names)} columns {names}; choose one with column=")
        idx = 0
    else:
        try:
            idx = names.index(column)
        except ValueError:
            raise ParseError(f"{path}: no column {column!r} in header {names}") from None
    values = []
    for i, line in lines[1:]:
        row = next(csv.reader([line]))
        if len(row) != len(names):
            raise ParseError(f"{path}:{i}: expected {len(names)} fields, got {len(row)} in {line!r}")
        values.append(_parse_number(row[idx], f"{path}:{i}"))
    return np.array(values)


def format_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        return repr(v)
    return str(value)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])
    return buf.getvalue()


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.write_text(csv_text(header, rows), encoding="utf-8", newline="")
    return path


# ----------------------------------------------------------------------------
# SVG
# ----------------------------------------------------------------------------

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


@dataclass
class Series:
    x: np.ndarray
    y: np.ndarray
    label: str = ""
    style: str = "line"  # or "points"


@dataclass
class Plot:
    title: str
    xlabel: str
    ylabel: str
    series: list[Series] = field(default_factory=list)
    logx: bool = False
    logy: bool = False


def _fmt_tick(v: float, log: bool) -> str:
    if log:
        return f"1e{v:.0f}" if float(v).is_integer() else f"{10**v:.3g}"
    return f"{v:.3g}"


def svg_text(plot: Plot, width: int = 640, height: int = 420) -> str:
    left, right, top, bottom = 70, 20, 40, 50
    pw, ph = width - left - right, height - top - bottom

    def tx(a, log):
        a = np.asarray(a, dtype=float)
        if log:
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.where(a > 0, np.log10(np.where(a > 0, a, 1.0)), np.nan)
        return a

    xs = [tx(s.x, plot.logx) for s in plot.series]
    ys = [tx(s.y, plot.logy) for s in plot.series]
    allx = np.concatenate([x[np.isfinite(x)] for x in xs]) if xs else np.array([0.0, 1.0])
    ally = np.concatenate([y[np.isfinite(y)] for y in ys]) if ys else np.array([0.0, 1.0])
    if allx.size == 0:
        allx = np.array([0.0, 1.0])
    if ally.size == 0:
        ally = np.array([0.0, 1.0])
    x0, x1 = float(allx.min()), float(allx.max())
    y0, y1 = float(ally.min()), float(ally.max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def px(v):
        return left + (v - x0) / (x1 - x0) * pw

    def py(v):
        return top + ph - (v - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-family="sans-serif" font-size="14">{escape(plot.title)}</text>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for i in range(5):
        fx = x0 + (x1 - x0) * i / 4
        fy = y0 + (y1 - y0) * i / 4
        out.append(f'<text x="{px(fx):.1f}" y="{top + ph + 16}" text-anchor="middle" font-family="sans-serif" font-size="10">{_fmt_tick(fx, plot.logx)}</text>')
        out.append(f'<text x="{left - 6}" y="{py(fy) + 3:.1f}" text-anchor="end" font-family="sans-serif" font-size="10">{_fmt_tick(fy, plot.logy)}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 10}" text-anchor="middle" font-family="sans-serif" font-size="12">{escape(plot.xlabel)}</text>')
    out.append(
        f'<text x="16" y="{top + ph / 2:.1f}" text-anchor="middle" font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {top + ph / 2:.1f})">{escape(plot.ylabel)}</text>'
    )
    for j, (s, x, y) in enumerate(zip(plot.series, xs, ys)):
        color = _COLORS[j % len(_COLORS)]
        ok = np.isfinite(x) & np.isfinite(y)
        pts = [(px(a), py(b)) for a, b in zip(x[ok], y[ok])]
        if s.style == "points":
            out.extend(f'<circle cx="{a:.2f}" cy="{b:.2f}" r="2" fill="{color}"/>' for a, b in pts)
        elif pts:
            coords = " ".join(f"{a:.2f},{b:.2f}" for a, b in pts)
            out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        if s.label:
            out.append(
                f'<text x="{left + pw - 8}" y="{top + 16 + 14 * j}" text-anchor="end" font-family="sans-serif" '
                f'font-size="11" fill="{color}">{escape(s.label)}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path: str | Path, plot: Plot) -> Path:
    path = Path(path)
    path.write_text(svg_text(plot), encoding="utf-8", newline="")
    return path
