#!/usr/bin/env python3
"""
Command-line interface for tree quadrature experiments.

Subcommands:
- run: execute a (problem x method x dim x replicate) grid
- summarize: recompute the summary table from a runs.csv
- diagnose: fit one tree and write its reliability curves
- figure: write error-versus-dimension CSV (and SVG) from a runs.csv

Exit codes: 0 success, 1 configuration or usage error, 2 failed runs under --strict.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import click
import numpy as np
from pydantic import ValidationError
from rich.console import Console
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn

from . import __version__
from .config import configure_logging, settings
from .core import LeafRule, SplitRule
from .diagnostics import RemovalOrder, cumulative_curve, removal_curve, surrogate_sample
from .errors import TreeQuadError
from .experiments import (
    ExperimentConfig,
    MethodKind,
    RunRecord,
    emit_figure_data,
    failed_runs,
    integrate_method,
    read_runs_csv,
    run_grid,
    run_seed,
    summarize,
    summary_table,
    summary_text,
    write_config_json,
    write_rows_csv,
    write_runs_csv,
    write_summary_csv,
)
from .problems import get_problem
from .sampling import SamplerKind, sample_mixture_direct

logger = logging.getLogger(__name__)
console = Console()

EXIT_CONFIG = 1
EXIT_FAILED_RUNS = 2


def _choice(enum: Any) -> click.Choice:
    return click.Choice([member.value for member in enum])


def _parse_dims(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from exc


def _fail(ctx: click.Context, message: str, code: int = EXIT_CONFIG) -> None:
    console.print(f"❌ {message}")
    ctx.exit(code)


def _load_config(config_path: Optional[Path], overrides: Dict[str, Any]) -> ExperimentConfig:
    if config_path is not None:
        return ExperimentConfig.from_yaml(config_path, **overrides)
    return ExperimentConfig(**{k: v for k, v in overrides.items() if v is not None})


def _write_summary(records: List[RunRecord], output: Path) -> None:
    rows = summarize(records)
    write_summary_csv(rows, output / settings.SUMMARY_CSV)
    (output / settings.SUMMARY_TEXT).write_text(summary_text(rows))
    console.print(summary_table(rows))


@click.group()
@click.version_option(__version__, prog_name="treequad")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Logging level (default: TREEQUAD_LOG_LEVEL or INFO).",
)
def cli(log_level: Optional[str]) -> None:
    """Tree quadrature benchmarks and diagnostics."""
    configure_logging(log_level.upper() if log_level else None)


@cli.command()
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path))
@click.option(
    "--problem", "problems", multiple=True, type=click.Choice(settings.SUPPORTED_PROBLEMS)
)
@click.option("--dims", help='Comma-separated dimensions, e.g. "1,5,10".')
@click.option("--method", "methods", multiple=True, type=_choice(MethodKind))
@click.option("--budget", type=int, help="Integrand evaluations per run.")
@click.option("--replicates", type=int)
@click.option("--seed", "root_seed", type=int, help="Root seed of the grid.")
@click.option("--sampler", type=_choice(SamplerKind))
@click.option("--split", type=_choice(SplitRule))
@click.option("--stop-max-samples", type=int)
@click.option("--stop-variance", type=float)
@click.option("--leaf-integral", "leaf_rule", type=_choice(LeafRule))
@click.option("--leaf-evals", type=int)
@click.option("--active-fraction", type=float)
@click.option(
    "--budget-includes-leaf-evals/--budget-excludes-leaf-evals",
    "budget_includes_leaf_evals",
    default=None,
)
@click.option("--proposal", type=click.Choice(["prior", "mixture"]))
@click.option("--vegas-bins", type=int)
@click.option("--vegas-iters", type=int)
@click.option("--vegas-alpha", type=float)
@click.option("--jobs", type=int)
@click.option("--strict", is_flag=True, default=None, help="Exit 2 if any run fails.")
@click.option("--output", "output_dir", type=click.Path(file_okay=False, path_type=Path))
@click.pass_context
def run(
    ctx: click.Context,
    config_path: Optional[Path],
    problems: Sequence[str],
    dims: Optional[str],
    methods: Sequence[str],
    vegas_bins: Optional[int],
    vegas_iters: Optional[int],
    vegas_alpha: Optional[float],
    **options: Any,
) -> None:
    """Run a benchmark grid and write runs.csv, config.json and the summary."""
    overrides: Dict[str, Any] = dict(options)
    overrides["problems"] = list(problems) or None
    overrides["methods"] = list(methods) or None
    overrides["dims"] = _parse_dims(dims)
    vegas_options = (("bins", vegas_bins), ("iterations", vegas_iters), ("alpha", vegas_alpha))
    vegas = {key: value for key, value in vegas_options if value is not None}
    overrides["vegas"] = vegas or None

    try:
        config = _load_config(config_path, overrides)
    except (ValidationError, TreeQuadError) as exc:
        _fail(ctx, f"Invalid configuration: {exc}")
        return

    output = Path(config.output_dir)
    output.mkdir(parents=True, exist_ok=True)
    console.print(f"📊 Running {config.n_runs()} runs with up to {config.jobs} jobs")

    with Progress(
        TextColumn("{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        console=console,
        transient=True,
    ) as progress:
        task = progress.add_task("runs", total=config.n_runs())
        records = run_grid(config, progress=lambda _record: progress.advance(task))

    write_runs_csv(records, output / settings.RUNS_FILE)
    write_config_json(config, output / settings.CONFIG_FILE)
    _write_summary(records, output)

    failures = failed_runs(records)
    if failures:
        console.print(f"❌ {len(failures)} of {len(records)} runs failed")
        if config.strict:
            ctx.exit(EXIT_FAILED_RUNS)
    else:
        console.print(f"✅ All {len(records)} runs completed; results in {output}")


@cli.command(name="summarize")
@click.argument("runs_csv", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--output", "output_dir", type=click.Path(file_okay=False, path_type=Path))
@click.pass_context
def summarize_cmd(ctx: click.Context, runs_csv: Path, output_dir: Optional[Path]) -> None:
    """Recompute summary.csv and summary.txt from a runs.csv."""
    try:
        records = read_runs_csv(runs_csv)
    except (ValidationError, TreeQuadError) as exc:
        _fail(ctx, f"Cannot read {runs_csv}: {exc}")
        return
    output = output_dir or runs_csv.parent
    output.mkdir(parents=True, exist_ok=True)
    _write_summary(records, output)
    console.print(f"✅ Summary of {len(records)} runs written to {output}")


@cli.command()
@click.option("--problem", type=click.Choice(settings.SUPPORTED_PROBLEMS), default="camel")
@click.option("--dim", type=int, default=2, show_default=True)
@click.option(
    "--method", type=click.Choice([MethodKind.TQ_S.value, MethodKind.TQ_A.value]), default="tq-s"
)
@click.option("--budget", type=int, default=settings.DEFAULT_BUDGET, show_default=True)
@click.option("--seed", "root_seed", type=int, default=0, show_default=True)
@click.option("--sampler", type=_choice(SamplerKind), default=SamplerKind.MIXTURE.value)
@click.option("--split", type=_choice(SplitRule), default=SplitRule.MINSSE.value)
@click.option("--leaf-integral", "leaf_rule", type=_choice(LeafRule), default=LeafRule.RANDOM.value)
@click.option("--leaf-evals", type=int, default=settings.DEFAULT_LEAF_EVALS, show_default=True)
@click.option("--stop-max-samples", type=int)
@click.option("--stop-variance", type=float)
@click.option("--posterior-samples", type=int, default=settings.DEFAULT_POSTERIOR_SAMPLES)
@click.option("--surrogate-samples", type=int, default=settings.DEFAULT_SURROGATE_SAMPLES)
@click.option("--order", type=_choice(RemovalOrder), default=RemovalOrder.VOLUME.value)
@click.option("--output", "output_dir", type=click.Path(file_okay=False, path_type=Path))
@click.pass_context
def diagnose(
    ctx: click.Context,
    problem: str,
    dim: int,
    method: str,
    order: str,
    output_dir: Optional[Path],
    **options: Any,
) -> None:
    """Fit one tree and write removal, cumulative and surrogate-sample files."""
    try:
        config = ExperimentConfig(
            problems=[problem],
            methods=[method],
            dims=[dim],
            replicates=1,
            output_dir=output_dir or Path("diagnostics"),
            **{k: v for k, v in options.items() if v is not None},
        )
        target = get_problem(problem, dim)
    except (ValidationError, TreeQuadError) as exc:
        _fail(ctx, f"Invalid configuration: {exc}")
        return

    kind = MethodKind(method)
    try:
        result = integrate_method(
            config, target, kind, run_seed(config.root_seed, 0, 0, kind.value)
        )
        posterior = sample_mixture_direct(
            target, config.posterior_samples, run_seed(config.root_seed, 0, 0, "posterior")
        )
        removal = removal_curve(result, posterior, order=order)
        cumulative = cumulative_curve(result, order=order)
        surrogate = surrogate_sample(
            result,
            config.surrogate_samples,
            np.random.default_rng(run_seed(config.root_seed, 0, 0, "surrogate")),
        )
    except TreeQuadError as exc:
        _fail(ctx, f"Diagnosis failed: {type(exc).__name__}: {exc}")
        return

    output = Path(config.output_dir)
    write_rows_csv(
        ["i", "z_i", "retained_fraction"], removal.rows(), output / settings.REMOVAL_CURVE_FILE
    )
    write_rows_csv(["k", "cumulative"], cumulative.rows(), output / settings.CUMULATIVE_CURVE_FILE)
    coordinates = [f"x{d}" for d in range(dim)]
    write_rows_csv(
        coordinates + ["leaf_id"],
        (list(loc) + [int(leaf)] for loc, leaf in zip(surrogate.locations, surrogate.leaf_ids)),
        output / settings.SURROGATE_FILE,
    )

    error = result.percent_error(target.true_value)
    console.print(
        f"📊 {problem} dim={dim} {method}: estimate {result.value:.6g}, "
        f"truth {target.true_value:.6g}, error {error:+.4f}% over {result.n_leaves} leaves"
    )
    console.print(f"✅ Diagnostics written to {output}")


@cli.command()
@click.argument("runs_csv", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--output", "output_dir", type=click.Path(file_okay=False, path_type=Path))
@click.option("--svg", is_flag=True, help="Also render an SVG per problem.")
@click.pass_context
def figure(ctx: click.Context, runs_csv: Path, output_dir: Optional[Path], svg: bool) -> None:
    """Write figure_<problem>.csv (and .svg) from a runs.csv."""
    try:
        records = read_runs_csv(runs_csv)
    except (ValidationError, TreeQuadError) as exc:
        _fail(ctx, f"Cannot read {runs_csv}: {exc}")
        return
    written = emit_figure_data(records, output_dir or runs_csv.parent, svg=svg)
    for path in written:
        console.print(f"✅ {path}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Console-script entry point; returns the process exit code."""
    try:
        code = cli.main(
            args=list(argv) if argv is not None else None,
            prog_name="treequad",
            standalone_mode=False,
        )
    except click.exceptions.Abort:
        console.print("❌ Aborted")
        return EXIT_CONFIG
    except click.ClickException as exc:
        exc.show()
        return EXIT_CONFIG
    return code if isinstance(code, int) else 0


if __name__ == "__main__":
    raise SystemExit(main())
