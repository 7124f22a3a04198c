"""
Grid runner: every (problem, method, dimension, replicate) of a config.

Runs are independent; they execute on worker threads under an anyio
capacity limiter, and the collected records are sorted by
(problem, method, dim, replicate) so scheduling never shows in the output.
"""

import logging
import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import anyio
import numpy as np

from ..baselines import importance_with, mixture_proposal, prior_proposal, smc, vegas
from ..core import IntegralResult, LeafRule, build_tq_a, build_tq_s, integrate_tree
from ..problems import Problem, get_problem
from ..sampling import SamplerConfig, draw_samples
from .config import ExperimentConfig, MethodKind, ProposalKind, RunRecord, RunStatus
from .seeds import run_seed, run_streams

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[RunRecord], None]


@dataclass(frozen=True)
class RunTask:
    problem: str
    method: MethodKind
    dim: int
    dim_index: int
    replicate: int


@dataclass(frozen=True)
class BudgetPlan:
    """Evaluations a tree run may spend before leaf integration."""

    n_initial: int
    n_active: int


def leaf_cost(config: ExperimentConfig) -> int:
    """Integrand evaluations the leaf rule spends per leaf."""
    if config.leaf_rule is LeafRule.RANDOM:
        return config.leaf_evals
    return 1 if config.leaf_rule is LeafRule.MIDPOINT else 0


def plan_budget(config: ExperimentConfig, method: MethodKind) -> BudgetPlan:
    """
    Split the run budget between initial samples and active refinement.

    With leaf evaluations inside the budget, ``budget // (1 + cost)`` points
    go to tree building (``cost`` being the leaf rule's evaluations per leaf)
    and the rest to leaf integration; otherwise the whole budget builds the
    tree. TQ-a hands ``active_fraction`` of its share to refinement.
    """
    building = config.budget
    if config.budget_includes_leaf_evals:
        building = config.budget // (1 + leaf_cost(config))
    if method is MethodKind.TQ_A:
        active = int(building * config.active_fraction)
        return BudgetPlan(building - active, active)
    return BudgetPlan(building, 0)


def distribute_leaf_evals(remaining: int, n_leaves: int) -> np.ndarray:
    """Spread evaluations over leaves as evenly as possible, at least one each."""
    base, extra = divmod(max(remaining, 0), n_leaves)
    counts = np.full(n_leaves, base, dtype=np.int64)
    counts[:extra] += 1
    return np.maximum(counts, 1)


def run_tree_method(
    config: ExperimentConfig, problem: Problem, method: MethodKind, seed: int
) -> IntegralResult:
    """Sample, build, refine (TQ-a) and integrate one tree."""
    streams = run_streams(seed)
    plan = plan_budget(config, method)
    batch = draw_samples(
        problem,
        SamplerConfig(
            kind=config.sampler,
            n=plan.n_initial,
            seed=streams["sampling"],
            step=config.metropolis_step,
            burn_in=config.metropolis_burn_in,
        ),
    )
    stop = config.stopping_rule()
    if method is MethodKind.TQ_A:
        rng = np.random.default_rng(streams["active"])
        tree = build_tq_a(batch, problem, config.split, stop, plan.n_active, rng)
    else:
        rng = np.random.default_rng(streams["split"])
        tree = build_tq_s(batch, problem, config.split, stop, rng)

    leaf_evals = None
    if config.budget_includes_leaf_evals and config.leaf_rule is LeafRule.RANDOM:
        remaining = config.budget - batch.evaluations - tree.evals_active
        leaf_evals = distribute_leaf_evals(remaining, len(tree.leaves))

    result = integrate_tree(
        tree,
        problem,
        config.leaf_rule,
        config.leaf_evals,
        seed=streams["leaves"],
        leaf_evals=leaf_evals,
        method=method.value,
    )
    result.details["sampler_warnings"] = list(batch.warnings)
    return result


def integrate_method(
    config: ExperimentConfig, problem: Problem, method: MethodKind, seed: int
) -> IntegralResult:
    """Run one integrator on one problem with one seed."""
    method = MethodKind(method)
    if method.is_tree:
        return run_tree_method(config, problem, method, seed)
    streams = run_streams(seed)
    if method is MethodKind.SMC:
        return smc(problem, config.budget, streams["sampling"])
    if method is MethodKind.IS:
        proposal = (
            mixture_proposal(problem)
            if config.proposal is ProposalKind.MIXTURE
            else prior_proposal(problem)
        )
        return importance_with(problem, proposal, config.budget, streams["sampling"])
    return vegas(
        problem,
        config.budget,
        iterations=config.vegas.iterations,
        bins=config.vegas.bins,
        alpha=config.vegas.alpha,
        seed=streams["sampling"],
    )


def grid_tasks(config: ExperimentConfig) -> List[RunTask]:
    return [
        RunTask(problem, method, dim, dim_index, replicate)
        for problem in config.problems
        for method in config.methods
        for dim_index, dim in enumerate(config.dims)
        for replicate in range(config.replicates)
    ]


def run_single(config: ExperimentConfig, task: RunTask) -> RunRecord:
    """
    Execute one run and record it; failures become failed records.

    Args:
        config: Experiment configuration
        task: Which run of the grid

    Returns:
        RunRecord with the estimate, signed percent error and evaluation ledger
    """
    seed = run_seed(config.root_seed, task.replicate, task.dim_index, task.method.value)
    problem = get_problem(task.problem, task.dim)
    base = {
        "problem": task.problem,
        "method": task.method,
        "dim": task.dim,
        "replicate": task.replicate,
        "seed": seed,
        "true_value": problem.true_value,
    }
    if task.method.is_tree:
        base.update(
            sampler=config.sampler.value,
            split=config.split.value,
            leaf_rule=config.leaf_rule.value,
        )

    started = time.perf_counter()
    try:
        result = integrate_method(config, problem, task.method, seed)
    except Exception as exc:
        logger.error(
            "run %s/%s/dim=%d/rep=%d failed: %s: %s",
            task.problem,
            task.method.value,
            task.dim,
            task.replicate,
            type(exc).__name__,
            exc,
        )
        return RunRecord(
            **base,
            status=RunStatus.FAILED,
            error=type(exc).__name__,
            evals_total=problem.evaluations,
            wall_time=time.perf_counter() - started,
        )

    percent = None
    if problem.true_value != 0:
        percent = result.percent_error(problem.true_value)
    return RunRecord(
        **base,
        estimate=result.value,
        percent_error=percent,
        evals_sampling=result.evals_sampling,
        evals_active=result.evals_active,
        evals_leaf_integration=result.evals_leaf_integration,
        evals_total=result.total_evals,
        n_leaves=result.n_leaves if task.method.is_tree else None,
        wall_time=time.perf_counter() - started,
    )


async def run_grid_async(
    config: ExperimentConfig, progress: Optional[ProgressCallback] = None
) -> List[RunRecord]:
    """Run the grid on up to ``config.jobs`` worker threads."""
    limiter = anyio.CapacityLimiter(config.jobs)
    records: List[RunRecord] = []

    async def execute(task: RunTask) -> None:
        record = await anyio.to_thread.run_sync(run_single, config, task, limiter=limiter)
        records.append(record)
        if progress is not None:
            progress(record)

    async with anyio.create_task_group() as group:
        for task in grid_tasks(config):
            group.start_soon(execute, task)

    return sorted(records, key=RunRecord.sort_key)


def run_grid(
    config: ExperimentConfig, progress: Optional[ProgressCallback] = None
) -> List[RunRecord]:
    """
    Run every (problem, method, dim, replicate) of a config.

    Returns:
        Records sorted by (problem, method, dim, replicate)
    """
    return anyio.run(run_grid_async, config, progress)


def failed_runs(records: List[RunRecord]) -> List[Tuple[str, str, int, int, Optional[str]]]:
    return [
        (r.problem, r.method.value, r.dim, r.replicate, r.error) for r in records if not r.ok
    ]
