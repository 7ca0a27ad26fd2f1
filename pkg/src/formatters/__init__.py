import csv
import io
import json
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

from src.exceptions import ArgumentError


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"
    SVG = "svg"
    TEXT = "text"


@dataclass(frozen=True)
class Table:
    """Named numeric columns; the first column is the abscissa of charts."""

    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.columns:
            raise ArgumentError("A table needs at least one column")
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ArgumentError(f"Row {row} does not match columns {self.columns}")

    def column(self, name: str) -> list[float]:
        index = self.columns.index(name)
        return [row[index] for row in self.rows]


# ============================================================================
# JSON
# ============================================================================


def _finite_or_none(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _finite_or_none(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_finite_or_none(v) for v in value]
    return value


def format_json(document: dict[str, Any]) -> str:
    """
    Format a result document as JSON; inf and nan become null.
    """
    return json.dumps(_finite_or_none(document), indent=2, allow_nan=False) + "\n"


def format_table_json(table: Table) -> str:
    """
    Format a table as JSON with one array per column.
    """
    document = {
        "columns": list(table.columns),
        "data": {name: table.column(name) for name in table.columns},
        "metadata": table.metadata,
    }
    return format_json(document)


# ============================================================================
# CSV
# ============================================================================


def format_csv(table: Table) -> str:
    """
    Format a table as CSV: header row, shortest round-trip floats, LF endings.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([repr(float(v)) for v in row])
    return buffer.getvalue()


# ============================================================================
# SVG
# ============================================================================

SVG_WIDTH = 800
SVG_HEIGHT = 600
SVG_MARGIN = (70, 160, 50, 60)  # left, right, top, bottom
SVG_TICKS = 5
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def _extent(values: Sequence[float]) -> tuple[float, float]:
    finite = [v for v in values if math.isfinite(v)]
    if not finite:
        return 0.0, 1.0
    lo, hi = min(finite), max(finite)
    if lo == hi:
        pad = abs(lo) * 0.5 or 1.0
        return lo - pad, hi + pad
    return lo, hi


def _ticks(lo: float, hi: float) -> list[float]:
    step = (hi - lo) / (SVG_TICKS - 1)
    return [lo + i * step for i in range(SVG_TICKS)]


def format_svg(table: Table, title: str = "") -> str:
    """
    Format a table as a line chart: first column on x, one polyline per
    remaining column, linear axes scaled to the data.
    """
    if not table.rows:
        raise ArgumentError("Cannot chart an empty table")
    left, right, top, bottom = SVG_MARGIN
    plot_w = SVG_WIDTH - left - right
    plot_h = SVG_HEIGHT - top - bottom

    xs = table.column(table.columns[0])
    series = table.columns[1:]
    x_lo, x_hi = _extent(xs)
    y_lo, y_hi = _extent([v for name in series for v in table.column(name)])

    def px(x: float) -> str:
        return f"{left + (x - x_lo) / (x_hi - x_lo) * plot_w:.2f}"

    def py(y: float) -> str:
        return f"{top + (y_hi - y) / (y_hi - y_lo) * plot_h:.2f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{SVG_WIDTH / 2:.2f}" y="{top - 20}" text-anchor="middle">{title}</text>')

    for x in _ticks(x_lo, x_hi):
        out.append(f'<line x1="{px(x)}" y1="{top + plot_h}" x2="{px(x)}" y2="{top + plot_h + 5}" stroke="black"/>')
        out.append(f'<text x="{px(x)}" y="{top + plot_h + 20}" text-anchor="middle" font-size="12">{x:.4g}</text>')
    for y in _ticks(y_lo, y_hi):
        out.append(f'<line x1="{left - 5}" y1="{py(y)}" x2="{left}" y2="{py(y)}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{py(y)}" text-anchor="end" font-size="12">{y:.4g}</text>')
    out.append(
        f'<text x="{left + plot_w / 2:.2f}" y="{SVG_HEIGHT - 10}" text-anchor="middle">{table.columns[0]}</text>'
    )

    for i, name in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        points = " ".join(
            f"{px(x)},{py(y)}"
            for x, y in zip(xs, table.column(name), strict=True)
            if math.isfinite(x) and math.isfinite(y)
        )
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{points}"/>')
        legend_y = top + 20 * (i + 1)
        legend_x = left + plot_w + 15
        out.append(f'<line x1="{legend_x}" y1="{legend_y}" x2="{legend_x + 25}" y2="{legend_y}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{legend_x + 32}" y="{legend_y + 4}" font-size="12">{name}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit(output_format: str, table: Table, title: str = "") -> str:
    """
    Render a table as csv, json or svg.

    Raises:
        ArgumentError: unknown format or empty table
    """
    if not table.rows:
        raise ArgumentError("Nothing to emit: the table is empty")
    if output_format == OutputFormat.CSV:
        return format_csv(table)
    if output_format == OutputFormat.JSON:
        return format_table_json(table)
    if output_format == OutputFormat.SVG:
        return format_svg(table, title)
    raise ArgumentError(f"Unknown output format '{output_format}', expected csv, json or svg")


# ============================================================================
# VERIFICATION TABLES
# ============================================================================


def _cell(value: float) -> str:
    if math.isinf(value):
        return "inf"
    return f"{value:.6e}"


def format_domination_report(report: Any) -> str:
    """
    Format a bound domination report for display.
    """
    header = f"{'n':>3}  {'exact':>22}  {'lp_improved':>13}  {'pu':>13}  {'lp_classic':>13}  {'margin':>13}"
    lines = [f"model: {report.model}  order: {report.order}", header]
    for row in report.rows:
        flag = "" if row.ok else "  FAIL"
        lines.append(
            f"{row.n:>3}  {row.exact_text:>22}  {_cell(row.lp_improved):>13}  {_cell(row.pu):>13}  "
            f"{_cell(row.lp_classic):>13}  {_cell(row.margin):>13}{flag}"
        )
    lines.append("all bounds dominate" if report.ok else f"{len(report.failures)} violation(s)")
    return "\n".join(lines)


def format_hypothesis_report(report: Any) -> str:
    """
    Format a cluster-hypothesis check for display.
    """
    lines = [f"hypothesis |n b_n| <= a n^(n-1)/n! b^n  [{report.model}: a={report.a!r}, b={report.b!r}]"]
    for row in report.rows:
        mark = "ok" if row.ok else "FAIL"
        lines.append(f"{row.n:>3}  {_cell(row.n_b_n):>13}  {_cell(row.bound):>13}  {mark}")
    return "\n".join(lines)


def format_oracle_rows(rows: list[dict[str, Any]]) -> str:
    """
    Format brute-force cluster coefficients next to the model's own.
    """
    lines = [f"{'n':>3}  {'model b_n':>22}  {'oracle b_n':>22}  {'error':>10}"]
    for row in rows:
        lines.append(
            f"{row['n']:>3}  {row['model']!r:>22}  {row['oracle']!r:>22}  {row['error']:>10.2e}"
        )
    return "\n".join(lines)


__all__ = [
    "OutputFormat",
    "Table",
    "emit",
    "format_csv",
    "format_domination_report",
    "format_hypothesis_report",
    "format_json",
    "format_oracle_rows",
    "format_svg",
    "format_table_json",
]
