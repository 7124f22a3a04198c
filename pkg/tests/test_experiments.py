"""
Tests for experiment configuration, seeding, budgeting, the grid runner and its outputs.
"""

import csv
import json
import xml.etree.ElementTree as ET

import pytest
from pydantic import ValidationError

from treequad.core import LeafRule
from treequad.errors import ConfigError
from treequad.experiments import (
    ExperimentConfig,
    MethodKind,
    RunRecord,
    RunStatus,
    RunTask,
    distribute_leaf_evals,
    emit_figure_data,
    failed_runs,
    figure_rows,
    leaf_cost,
    method_hash,
    plan_budget,
    read_runs_csv,
    render_svg,
    run_grid,
    run_grid_async,
    run_seed,
    run_single,
    run_streams,
    splitmix64,
    summarize,
    summary_text,
    write_config_json,
    write_runs_csv,
    write_summary_csv,
)
from treequad.sampling import SamplerKind


def record(method="tq-s", dim=1, replicate=0, error=0.0, status=RunStatus.OK, problem="camel"):
    return RunRecord(
        problem=problem,
        method=MethodKind(method),
        dim=dim,
        replicate=replicate,
        seed=1,
        status=status,
        estimate=None if status is RunStatus.FAILED else 2.0,
        true_value=2.0,
        percent_error=None if status is RunStatus.FAILED else error,
    )


@pytest.fixture
def small_config(output_dir):
    """A grid small enough to run inside a unit test."""
    return ExperimentConfig(
        problems=["camel"],
        methods=[MethodKind.SMC, MethodKind.TQ_S, MethodKind.TQ_A],
        dims=[1, 2],
        budget=600,
        replicates=2,
        jobs=2,
        output_dir=output_dir,
    )


class TestSeeds:
    def test_splitmix64_reference_value(self):
        assert splitmix64(0) == 0xE220A8397B1DCDAF

    def test_method_hash_is_stable(self):
        assert method_hash("tq-s") == method_hash("tq-s")
        assert method_hash("tq-s") != method_hash("tq-a")

    def test_root_seed_is_xored_in(self):
        a = run_seed(0, 3, 1, "smc")
        b = run_seed(12345, 3, 1, "smc")
        assert a ^ b == 12345

    def test_distinct_runs_get_distinct_seeds(self):
        seeds = {
            run_seed(0, rep, dim_index, method)
            for rep in range(5)
            for dim_index in range(3)
            for method in ("smc", "is", "vegas", "tq-s", "tq-a")
        }
        assert len(seeds) == 75

    def test_streams(self):
        streams = run_streams(42)
        assert set(streams) == {"sampling", "active", "leaves", "split"}
        assert len(set(streams.values())) == 4
        assert run_streams(42) == streams


class TestConfig:
    def test_defaults(self):
        config = ExperimentConfig()
        assert config.budget == 12_000
        assert config.leaf_evals == 10
        assert config.stopping_rule() is None
        assert config.n_runs() == 20

    def test_unknown_problem(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(problems=["banana"])

    def test_bad_values(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(replicates=0)
        with pytest.raises(ValidationError):
            ExperimentConfig(dims=[0])
        with pytest.raises(ValidationError):
            ExperimentConfig(methods=[MethodKind.TQ_S], budget=10, leaf_evals=10)

    def test_budget_check_only_for_trees(self):
        config = ExperimentConfig(methods=[MethodKind.SMC], budget=5)
        assert config.budget == 5

    def test_explicit_stopping_rule(self):
        config = ExperimentConfig(stop_max_samples=3, stop_variance=0.5)
        assert len(config.stopping_rule().conditions) == 2

    def test_from_yaml_with_overrides(self, tmp_path):
        path = tmp_path / "grid.yaml"
        path.write_text("problems: [gaussian]\ndims: [1, 2]\nbudget: 800\nmethods: [vegas]\n")
        config = ExperimentConfig.from_yaml(path, budget=900, replicates=None)
        assert config.problems == ["gaussian"]
        assert config.methods == [MethodKind.VEGAS]
        assert config.budget == 900

    def test_from_yaml_rejects_non_mapping(self, tmp_path):
        path = tmp_path / "grid.yaml"
        path.write_text("- camel\n")
        with pytest.raises(ConfigError):
            ExperimentConfig.from_yaml(path)

    def test_from_yaml_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_yaml(tmp_path / "missing.yaml")


class TestBudget:
    def test_leaf_cost(self):
        assert leaf_cost(ExperimentConfig()) == 10
        assert leaf_cost(ExperimentConfig(leaf_rule=LeafRule.MIDPOINT)) == 1
        assert leaf_cost(ExperimentConfig(leaf_rule=LeafRule.MEAN)) == 0

    def test_default_split_includes_leaf_evals(self):
        config = ExperimentConfig()
        assert plan_budget(config, MethodKind.TQ_S).n_initial == 1090
        plan = plan_budget(config, MethodKind.TQ_A)
        assert (plan.n_initial, plan.n_active) == (818, 272)

    def test_excluding_leaf_evals(self):
        config = ExperimentConfig(budget_includes_leaf_evals=False)
        plan = plan_budget(config, MethodKind.TQ_A)
        assert (plan.n_initial, plan.n_active) == (9000, 3000)
        assert plan_budget(config, MethodKind.TQ_S).n_initial == 12_000

    def test_distribute_leaf_evals(self):
        assert distribute_leaf_evals(10, 3).tolist() == [4, 3, 3]
        assert distribute_leaf_evals(2, 5).tolist() == [1, 1, 1, 1, 1]


class TestRunSingle:
    @pytest.mark.parametrize("method", [MethodKind.TQ_S, MethodKind.TQ_A])
    def test_tree_run_spends_whole_budget(self, method):
        config = ExperimentConfig(methods=[method], dims=[2], budget=2000)
        result = run_single(config, RunTask("camel", method, 2, 0, 0))
        assert result.ok
        assert result.evals_total == 2000
        assert result.evals_total == (
            result.evals_sampling + result.evals_active + result.evals_leaf_integration
        )
        assert result.n_leaves > 0
        assert result.split == "minsse"

    def test_tq_a_excluding_leaf_evals(self):
        config = ExperimentConfig(
            methods=[MethodKind.TQ_A], dims=[2], budget=4000, budget_includes_leaf_evals=False
        )
        result = run_single(config, RunTask("camel", MethodKind.TQ_A, 2, 0, 0))
        assert result.evals_sampling == 3000
        assert result.evals_active == 1000

    @pytest.mark.parametrize("method", [MethodKind.SMC, MethodKind.IS, MethodKind.VEGAS])
    def test_baseline_runs(self, method):
        config = ExperimentConfig(methods=[method], dims=[1], budget=1000)
        result = run_single(config, RunTask("camel", method, 1, 0, 0))
        assert result.ok
        assert result.evals_total == 1000
        assert result.n_leaves is None
        assert result.sampler is None

    def test_failure_becomes_record(self, caplog):
        config = ExperimentConfig(
            methods=[MethodKind.TQ_S],
            budget=2000,
            sampler=SamplerKind.METROPOLIS,
            metropolis_burn_in=5000,
        )
        result = run_single(config, RunTask("camel", MethodKind.TQ_S, 1, 0, 0))
        assert result.status is RunStatus.FAILED
        assert result.error == "EmptyBatchError"
        assert result.estimate is None
        assert "EmptyBatchError" in caplog.text
        assert failed_runs([result]) == [("camel", "tq-s", 1, 0, "EmptyBatchError")]


class TestGrid:
    def test_records_sorted_and_complete(self, small_config):
        records = run_grid(small_config)
        assert len(records) == small_config.n_runs()
        keys = [r.sort_key() for r in records]
        assert keys == sorted(keys)
        assert all(r.ok for r in records)

    def test_reruns_are_identical(self, small_config, tmp_path):
        paths = []
        for name in ("a.csv", "b.csv"):
            records = [r.model_copy(update={"wall_time": 0.0}) for r in run_grid(small_config)]
            paths.append(write_runs_csv(records, tmp_path / name))
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_jobs_do_not_change_results(self, small_config):
        serial = run_grid(small_config.model_copy(update={"jobs": 1}))
        parallel = run_grid(small_config.model_copy(update={"jobs": 3}))
        assert [r.estimate for r in serial] == [r.estimate for r in parallel]

    async def test_async_runner_reports_progress(self, small_config):
        seen = []
        records = await run_grid_async(small_config, seen.append)
        assert len(seen) == len(records) == small_config.n_runs()


class TestOutputs:
    def test_runs_csv_round_trip(self, tmp_path):
        records = [record(error=1.5), record("smc", status=RunStatus.FAILED)]
        records[1] = records[1].model_copy(update={"error": "EmptyBatchError"})
        path = write_runs_csv(records, tmp_path / "runs.csv")
        assert read_runs_csv(path) == records

    def test_read_runs_csv_errors(self, tmp_path):
        with pytest.raises(ConfigError):
            read_runs_csv(tmp_path / "missing.csv")
        bad = tmp_path / "bad.csv"
        bad.write_text("problem,dim\ncamel,1\n")
        with pytest.raises(ConfigError):
            read_runs_csv(bad)

    def test_config_echo(self, small_config, tmp_path):
        path = write_config_json(small_config, tmp_path / "config.json")
        echoed = json.loads(path.read_text())
        assert echoed["budget"] == 600
        assert echoed["methods"] == ["smc", "tq-s", "tq-a"]


class TestSummary:
    def test_median_and_stdev(self):
        rows = summarize([record(error=e, replicate=i) for i, e in enumerate([-1.0, 0.0, 1.0])])
        assert len(rows) == 1
        assert rows[0].median == 0.0
        assert rows[0].stdev == pytest.approx(1.0)

    def test_identical_errors(self):
        rows = summarize([record(error=2.0, replicate=i) for i in range(4)])
        assert rows[0].stdev == 0.0

    def test_single_value_has_no_stdev(self):
        rows = summarize([record(error=2.0)])
        assert rows[0].stdev is None
        assert "n/a" in rows[0].cell_text()

    def test_all_failed_cell_is_flagged(self):
        rows = summarize([record(status=RunStatus.FAILED), record(method="smc", error=1.0)])
        flagged = {row.method: row.flagged for row in rows}
        assert flagged == {"smc": False, "tq-s": True}

    def test_text_and_csv(self, tmp_path):
        rows = summarize([record(error=1.0), record(method="vegas", error=-3.0)])
        text = summary_text(rows)
        assert "vegas" in text and "tq-s" in text
        path = write_summary_csv(rows, tmp_path / "summary.csv")
        with path.open() as handle:
            assert len(list(csv.DictReader(handle))) == 2


class TestFigures:
    def test_rows_per_method_and_dim(self):
        records = [
            record(method, dim, rep, error=float(rep))
            for method in ("smc", "is", "vegas", "tq-s")
            for dim in (1, 3, 5)
            for rep in range(4)
        ]
        rows = figure_rows(records, "camel")
        assert len(rows) == 12
        assert rows[0].median == pytest.approx(1.5)
        assert figure_rows(records, "quad") == []

    def test_svg_parses(self):
        rows = figure_rows([record(error=-2.0), record(dim=2, error=4.0)], "camel")
        root = ET.fromstring(render_svg(rows, "camel"))
        assert root.tag.endswith("svg")

    def test_emit_figure_data(self, output_dir):
        records = [record(error=1.0), record(problem="quad", error=2.0)]
        written = emit_figure_data(records, output_dir, svg=True)
        names = sorted(path.name for path in written)
        assert names == [
            "figure_camel.csv",
            "figure_camel.svg",
            "figure_quad.csv",
            "figure_quad.svg",
        ]
