"""
Experiments Package

Benchmark grids over problems, methods, dimensions and replicates.

Key components:
- config.py: ExperimentConfig (YAML loadable), MethodKind, VegasSettings, RunRecord
- seeds.py: Per-run seed derivation from the root seed
- runner.py: Budget planning, single runs and the anyio grid runner
- io.py: runs.csv and config.json reading and writing
- summary.py: Median / standard deviation tables (CSV and aligned text)
- figures.py: Error-versus-dimension CSV and SVG
"""

from .config import (
    ExperimentConfig,
    MethodKind,
    ProposalKind,
    RunRecord,
    RunStatus,
    VegasSettings,
)
from .figures import FigureRow, emit_figure_data, figure_rows, render_svg, write_figure_csv
from .io import read_runs_csv, write_config_json, write_rows_csv, write_runs_csv
from .runner import (
    BudgetPlan,
    RunTask,
    distribute_leaf_evals,
    failed_runs,
    grid_tasks,
    integrate_method,
    leaf_cost,
    plan_budget,
    run_grid,
    run_grid_async,
    run_single,
    run_tree_method,
)
from .seeds import method_hash, run_seed, run_streams, splitmix64
from .summary import SummaryRow, summarize, summary_table, summary_text, write_summary_csv

__all__ = [
    "BudgetPlan",
    "ExperimentConfig",
    "FigureRow",
    "MethodKind",
    "ProposalKind",
    "RunRecord",
    "RunStatus",
    "RunTask",
    "SummaryRow",
    "VegasSettings",
    "distribute_leaf_evals",
    "emit_figure_data",
    "failed_runs",
    "figure_rows",
    "grid_tasks",
    "integrate_method",
    "leaf_cost",
    "method_hash",
    "plan_budget",
    "read_runs_csv",
    "render_svg",
    "run_grid",
    "run_grid_async",
    "run_seed",
    "run_single",
    "run_streams",
    "run_tree_method",
    "splitmix64",
    "summarize",
    "summary_table",
    "summary_text",
    "write_config_json",
    "write_figure_csv",
    "write_rows_csv",
    "write_runs_csv",
    "write_summary_csv",
]
