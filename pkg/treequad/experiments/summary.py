"""
Per-cell summaries of run records: median and standard deviation of the
signed percent error for every (problem, method, dim).
"""

import io
import statistics
from dataclasses import dataclass
from itertools import groupby
from pathlib import Path
from typing import Iterable, List, Optional

from rich.console import Console
from rich.table import Table

from .config import RunRecord
from .io import write_rows_csv

SUMMARY_COLUMNS = ["problem", "method", "dim", "n_ok", "n_failed", "median", "stdev", "flagged"]


@dataclass(frozen=True)
class SummaryRow:
    problem: str
    method: str
    dim: int
    n_ok: int
    n_failed: int
    median: Optional[float]
    stdev: Optional[float]

    @property
    def flagged(self) -> bool:
        """Cell without a single usable error."""
        return self.median is None

    def cell_text(self) -> str:
        if self.median is None:
            return "-"
        spread = "n/a" if self.stdev is None else f"{self.stdev:.5f}"
        return f"{self.median:.5f} ± {spread}"


def summarize(records: Iterable[RunRecord]) -> List[SummaryRow]:
    """
    Median and sample standard deviation (N - 1) of percent errors per cell.

    Cells whose runs all failed are kept with empty statistics; a cell with a
    single usable run has no standard deviation.
    """
    ordered = sorted(records, key=lambda r: (r.problem, r.method.value, r.dim))
    rows = []
    for (problem, method, dim), group in groupby(
        ordered, key=lambda r: (r.problem, r.method.value, r.dim)
    ):
        cell = list(group)
        errors = [r.percent_error for r in cell if r.ok and r.percent_error is not None]
        rows.append(
            SummaryRow(
                problem=problem,
                method=method,
                dim=dim,
                n_ok=sum(1 for r in cell if r.ok),
                n_failed=sum(1 for r in cell if not r.ok),
                median=statistics.median(errors) if errors else None,
                stdev=statistics.stdev(errors) if len(errors) >= 2 else None,
            )
        )
    return rows


def write_summary_csv(rows: List[SummaryRow], path: Path) -> Path:
    return write_rows_csv(
        SUMMARY_COLUMNS,
        (
            (r.problem, r.method, r.dim, r.n_ok, r.n_failed, r.median, r.stdev, int(r.flagged))
            for r in rows
        ),
        path,
    )


def summary_table(rows: List[SummaryRow]) -> Table:
    """Problems and dimensions down the side, one column per method."""
    methods = sorted({r.method for r in rows})
    table = Table(title="Median percentage error ± standard deviation")
    table.add_column("problem")
    table.add_column("dim", justify="right")
    for method in methods:
        table.add_column(method, justify="right")

    cells = {(r.problem, r.dim, r.method): r for r in rows}
    for problem, dim in sorted({(r.problem, r.dim) for r in rows}):
        texts = []
        for method in methods:
            row = cells.get((problem, dim, method))
            texts.append(row.cell_text() if row is not None else "")
        table.add_row(problem, str(dim), *texts)
    return table


def summary_text(rows: List[SummaryRow], width: int = 120) -> str:
    """The summary table rendered as plain aligned text."""
    buffer = io.StringIO()
    console = Console(file=buffer, width=width, no_color=True, force_terminal=False)
    console.print(summary_table(rows))
    return buffer.getvalue()
