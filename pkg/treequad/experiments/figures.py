"""
Error-versus-dimension figure data: a CSV per problem with median and
interquartile range of the signed and absolute percent error, plus an
optional two-panel SVG drawn from the same numbers.
"""

from pathlib import Path
from typing import Dict, Iterable, List, Tuple
from xml.etree import ElementTree as ET

import numpy as np
from pydantic import BaseModel

from .config import RunRecord
from .io import write_rows_csv

FIGURE_COLUMNS = ["method", "dim", "median", "q25", "q75", "abs_median", "abs_q25", "abs_q75"]

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
_PANEL_WIDTH = 320
_PANEL_HEIGHT = 220
_MARGIN = 50


class FigureRow(BaseModel):
    method: str
    dim: int
    median: float
    q25: float
    q75: float
    abs_median: float
    abs_q25: float
    abs_q75: float


def figure_rows(records: Iterable[RunRecord], problem: str) -> List[FigureRow]:
    """One row per (method, dim) of a problem, from successful runs only."""
    cells: Dict[Tuple[str, int], List[float]] = {}
    for record in records:
        if record.problem != problem or not record.ok or record.percent_error is None:
            continue
        cells.setdefault((record.method.value, record.dim), []).append(record.percent_error)

    rows = []
    for (method, dim), errors in sorted(cells.items()):
        signed = np.asarray(errors)
        q25, median, q75 = np.percentile(signed, [25, 50, 75])
        a25, amed, a75 = np.percentile(np.abs(signed), [25, 50, 75])
        rows.append(
            FigureRow(
                method=method,
                dim=dim,
                median=float(median),
                q25=float(q25),
                q75=float(q75),
                abs_median=float(amed),
                abs_q25=float(a25),
                abs_q75=float(a75),
            )
        )
    return rows


def write_figure_csv(rows: List[FigureRow], path: Path) -> Path:
    return write_rows_csv(
        FIGURE_COLUMNS, ([getattr(r, c) for c in FIGURE_COLUMNS] for r in rows), path
    )


def _scale(values: List[float], low: float, high: float) -> Tuple[float, float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        lo, hi = lo - 1.0, hi + 1.0
    return lo, (high - low) / (hi - lo)


def _panel(
    root: ET.Element, rows: List[FigureRow], x_offset: float, title: str, log_scale: bool
) -> None:
    def y_of(row: FigureRow) -> float:
        if log_scale:
            return float(np.log10(max(row.abs_median, 1e-12)))
        return row.median

    group = ET.SubElement(root, "g", transform=f"translate({x_offset},0)")
    ET.SubElement(group, "text", x=str(_MARGIN), y="20").text = title
    ET.SubElement(
        group,
        "rect",
        x=str(_MARGIN),
        y=str(_MARGIN),
        width=str(_PANEL_WIDTH - _MARGIN),
        height=str(_PANEL_HEIGHT - _MARGIN),
        fill="none",
        stroke="#888888",
    )
    if not rows:
        return
    dims = [float(r.dim) for r in rows]
    values = [y_of(r) for r in rows]
    x_lo, x_step = _scale(dims, _MARGIN, _PANEL_WIDTH)
    y_lo, y_step = _scale(values, _MARGIN, _PANEL_HEIGHT)

    methods = sorted({r.method for r in rows})
    for k, method in enumerate(methods):
        series = sorted((r for r in rows if r.method == method), key=lambda r: r.dim)
        coords = [
            (_MARGIN + (r.dim - x_lo) * x_step, _PANEL_HEIGHT - (y_of(r) - y_lo) * y_step)
            for r in series
        ]
        points = " ".join(f"{x:.2f},{y:.2f}" for x, y in coords)
        colour = _PALETTE[k % len(_PALETTE)]
        ET.SubElement(group, "polyline", points=points, fill="none", stroke=colour)
        label = ET.SubElement(
            group, "text", x=str(_MARGIN + 5), y=str(_MARGIN + 15 * (k + 1)), fill=colour
        )
        label.text = method


def render_svg(rows: List[FigureRow], title: str) -> str:
    """Two panels: median signed error and log10 median absolute error against dimension."""
    width = 2 * (_PANEL_WIDTH + _MARGIN)
    root = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(width),
        height=str(_PANEL_HEIGHT + _MARGIN),
    )
    _panel(root, rows, 0, f"{title}: median % error", log_scale=False)
    _panel(root, rows, _PANEL_WIDTH + _MARGIN, f"{title}: log10 median |% error|", log_scale=True)
    return ET.tostring(root, encoding="unicode")


def emit_figure_data(
    records: List[RunRecord], output_dir: Path, svg: bool = False
) -> List[Path]:
    """
    Write figure_<problem>.csv (and .svg) for every problem in the records.

    Returns:
        Paths written, in problem order
    """
    output_dir = Path(output_dir)
    written = []
    for problem in sorted({r.problem for r in records}):
        rows = figure_rows(records, problem)
        written.append(write_figure_csv(rows, output_dir / f"figure_{problem}.csv"))
        if svg:
            path = output_dir / f"figure_{problem}.svg"
            path.write_text(render_svg(rows, problem) + "\n")
            written.append(path)
    return written
