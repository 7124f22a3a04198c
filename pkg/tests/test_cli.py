"""
Tests for the treequad command-line interface.
"""

import csv

import pytest
from click.testing import CliRunner

from treequad import __version__
from treequad.cli import cli, main
from treequad.config import settings
from treequad.errors import UnsupportedProblemError


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def small_run(runner, output_dir):
    """A finished two-method grid in output_dir."""
    result = runner.invoke(
        cli,
        [
            "run",
            "--problem",
            "camel",
            "--dims",
            "1,2",
            "--method",
            "smc",
            "--method",
            "tq-s",
            "--budget",
            "300",
            "--replicates",
            "2",
            "--output",
            str(output_dir),
        ],
    )
    assert result.exit_code == 0, result.output
    return output_dir


def read_rows(path):
    with path.open(newline="") as handle:
        return list(csv.DictReader(handle))


class TestRun:
    def test_writes_outputs(self, small_run):
        for name in (settings.RUNS_FILE, settings.CONFIG_FILE, settings.SUMMARY_CSV):
            assert (small_run / name).exists()
        assert len(read_rows(small_run / settings.RUNS_FILE)) == 8
        assert "tq-s" in (small_run / settings.SUMMARY_TEXT).read_text()

    def test_config_file_with_override(self, runner, output_dir, tmp_path):
        config = tmp_path / "grid.yaml"
        config.write_text("problems: [gaussian]\nmethods: [vegas]\ndims: [1]\nbudget: 500\n")
        result = runner.invoke(
            cli,
            ["run", "--config", str(config), "--replicates", "1", "--output", str(output_dir)],
        )
        assert result.exit_code == 0, result.output
        rows = read_rows(output_dir / settings.RUNS_FILE)
        assert [(r["problem"], r["method"]) for r in rows] == [("gaussian", "vegas")]

    def test_invalid_configuration_exits_1(self, output_dir):
        code = main(["run", "--replicates", "0", "--output", str(output_dir)])
        assert code == 1

    def test_usage_error_exits_1(self):
        assert main(["run", "--bogus-option"]) == 1

    def test_strict_failures_exit_2(self, output_dir, mocker):
        mocker.patch(
            "treequad.experiments.runner.integrate_method", side_effect=RuntimeError("boom")
        )
        args = ["run", "--method", "smc", "--replicates", "1", "--output", str(output_dir)]
        assert main(args + ["--strict"]) == 2
        rows = read_rows(output_dir / settings.RUNS_FILE)
        assert rows[0]["status"] == "failed"
        assert rows[0]["error"] == "RuntimeError"

    def test_failures_without_strict_exit_0(self, output_dir, mocker):
        mocker.patch(
            "treequad.experiments.runner.integrate_method", side_effect=RuntimeError("boom")
        )
        args = ["run", "--method", "smc", "--replicates", "1", "--output", str(output_dir)]
        assert main(args) == 0


class TestSummarizeAndFigure:
    def test_summarize(self, runner, small_run, tmp_path):
        target = tmp_path / "again"
        result = runner.invoke(
            cli, ["summarize", str(small_run / settings.RUNS_FILE), "--output", str(target)]
        )
        assert result.exit_code == 0, result.output
        assert read_rows(target / settings.SUMMARY_CSV) == read_rows(
            small_run / settings.SUMMARY_CSV
        )

    def test_summarize_missing_file(self, tmp_path):
        assert main(["summarize", str(tmp_path / "nope.csv")]) == 1

    def test_figure(self, runner, small_run):
        result = runner.invoke(cli, ["figure", str(small_run / settings.RUNS_FILE), "--svg"])
        assert result.exit_code == 0, result.output
        rows = read_rows(small_run / "figure_camel.csv")
        assert {(r["method"], r["dim"]) for r in rows} == {
            ("smc", "1"),
            ("smc", "2"),
            ("tq-s", "1"),
            ("tq-s", "2"),
        }
        assert (small_run / "figure_camel.svg").read_text().startswith("<svg")


class TestDiagnose:
    def test_writes_curves(self, runner, output_dir):
        result = runner.invoke(
            cli,
            [
                "diagnose",
                "--dim",
                "1",
                "--budget",
                "550",
                "--posterior-samples",
                "500",
                "--surrogate-samples",
                "100",
                "--output",
                str(output_dir),
            ],
        )
        assert result.exit_code == 0, result.output
        removal = read_rows(output_dir / settings.REMOVAL_CURVE_FILE)
        assert removal[0]["i"] == "0"
        assert float(removal[0]["retained_fraction"]) == 1.0
        assert len(read_rows(output_dir / settings.CUMULATIVE_CURVE_FILE)) > 0
        surrogate = read_rows(output_dir / settings.SURROGATE_FILE)
        assert len(surrogate) == 100
        assert set(surrogate[0]) == {"x0", "leaf_id"}

    def test_problem_without_mixture_fails_cleanly(self, output_dir, mocker):
        mocker.patch(
            "treequad.cli.sample_mixture_direct",
            side_effect=UnsupportedProblemError("no modes"),
        )
        code = main(["diagnose", "--dim", "1", "--budget", "550", "--output", str(output_dir)])
        assert code == 1


def test_version():
    result = CliRunner().invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output
