"""
Regression-tree construction and tree quadrature.

``build_tq_s`` grows a tree over a fixed sample batch: containers leave a
FIFO queue, and each one is either kept as a leaf (its stopping rule holds,
it hit the depth cap, or no cut exists) or split into two children that
rejoin the queue. ``build_tq_a`` continues from that tree, spending a budget
of fresh evaluations on whichever leaf currently shows the widest range of
integrand values. ``integrate_tree`` sums a leaf rule over the final leaves.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..config import settings
from ..errors import (
    DegenerateContainerError,
    EmptyInputError,
    InvalidInputError,
    InvalidSampleCountError,
)
from ..problems import Domain, Problem
from ..sampling import SampleBatch
from .container import AxialCut, Container, split
from .leaf_rules import LeafRule, integrate_container
from .result import IntegralResult
from .split_rules import SplitRule, choose_split
from .stopping import StoppingRule, default_stopping

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BuildStep:
    """
    One entry of a build log.

    A step either splits ``container_id`` into ``left_id``/``right_id`` or,
    with ``cut`` left unset, only records a sample added to a container that
    could not be split. ``added_location``/``added_value`` are set for every
    step taken during active refinement.
    """

    container_id: int
    cut: Optional[AxialCut] = None
    left_id: Optional[int] = None
    right_id: Optional[int] = None
    added_location: Optional[Tuple[float, ...]] = None
    added_value: Optional[float] = None


@dataclass(frozen=True)
class RefinementPop:
    """Active-refinement bookkeeping: what was popped and the best left in the queue."""

    container_id: int
    inaccuracy: float
    max_queued: float


class LeafLocator:
    """
    Vectorized point location by descending the recorded split hierarchy.

    Points on a cut go to the upper child, matching how samples are split;
    points on the domain's upper faces land in the adjacent leaf. Points
    outside the domain get id -1.
    """

    def __init__(self, domain: Domain, build_log: Iterable[BuildStep], root_id: int = 0):
        self.domain = domain
        splits: Dict[int, BuildStep] = {
            step.container_id: step for step in build_log if step.cut is not None
        }
        ids = [root_id]
        for step in splits.values():
            ids.extend([step.left_id, step.right_id])  # type: ignore[list-item]
        index = {node_id: k for k, node_id in enumerate(ids)}

        size = len(ids)
        self._ids = np.asarray(ids, dtype=np.int64)
        self._axis = np.zeros(size, dtype=np.int64)
        self._threshold = np.zeros(size)
        self._left = np.full(size, -1, dtype=np.int64)
        self._right = np.full(size, -1, dtype=np.int64)
        for node_id, step in splits.items():
            k = index[node_id]
            self._axis[k] = step.cut.dim  # type: ignore[union-attr]
            self._threshold[k] = step.cut.threshold  # type: ignore[union-attr]
            self._left[k] = index[step.left_id]  # type: ignore[index]
            self._right[k] = index[step.right_id]  # type: ignore[index]

    def locate(self, x: np.ndarray) -> np.ndarray:
        """Leaf id for each row of x (or a length-1 array for a single point)."""
        pts = np.atleast_2d(np.asarray(x, dtype=float))
        node = np.zeros(pts.shape[0], dtype=np.int64)
        inside = np.asarray(self.domain.contains(pts), dtype=bool).reshape(-1)
        active = inside & (self._left[node] >= 0)
        while active.any():
            rows = np.flatnonzero(active)
            current = node[rows]
            upper = pts[rows, self._axis[current]] >= self._threshold[current]
            node[rows] = np.where(upper, self._right[current], self._left[current])
            active[rows] = self._left[node[rows]] >= 0
        located = self._ids[node]
        located[~inside] = -1
        return located


@dataclass
class Tree:
    """
    A built regression tree.

    ``leaves`` are sorted by id and tile ``domain``. ``build_log`` replays
    to the same leaves through ``replay_tree``.
    """

    domain: Domain
    leaves: List[Container]
    split_rule: SplitRule
    build_log: List[BuildStep]
    evals_sampling: int = 0
    evals_active: int = 0
    retired: int = 0
    depth_capped: int = 0
    refinement_log: List[RefinementPop] = field(default_factory=list)

    @property
    def total_samples(self) -> int:
        return sum(leaf.n_samples for leaf in self.leaves)

    @property
    def n_splits(self) -> int:
        return sum(1 for step in self.build_log if step.cut is not None)

    def locator(self) -> LeafLocator:
        return LeafLocator(self.domain, self.build_log)

    def leaf_bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        """(L, D) arrays of leaf lower and upper corners."""
        lower = np.stack([leaf.bounds.lower for leaf in self.leaves])
        upper = np.stack([leaf.bounds.upper for leaf in self.leaves])
        return lower, upper

    def check_tiling(self, rtol: float = 1e-10) -> None:
        """
        Raises:
            RuntimeError: leaf volumes do not sum to the domain volume
        """
        total = float(np.sum([leaf.volume() for leaf in self.leaves]))
        expected = self.domain.volume()
        if abs(total - expected) > rtol * expected:
            raise RuntimeError(f"leaf volumes sum to {total!r}, domain volume is {expected!r}")


def _check_children(parent: Container, left: Container, right: Container) -> None:
    volume = left.volume() + right.volume()
    if abs(volume - parent.volume()) > 1e-10 * parent.volume():
        raise RuntimeError(f"split of container {parent.id} lost volume")
    if left.n_samples + right.n_samples != parent.n_samples:
        raise RuntimeError(f"split of container {parent.id} lost samples")


class _TreeBuilder:
    """Shared state of one tree build: id source, log and split machinery."""

    def __init__(self, domain: Domain, rule: SplitRule, rng: Optional[np.random.Generator]):
        self.domain = domain
        self.rule = SplitRule(rule)
        if rng is None and self.rule is SplitRule.RANDOM:
            rng = np.random.default_rng()
        self.rng = rng
        self.ids = itertools.count(1)
        self.log: List[BuildStep] = []
        self.retired = 0
        self.depth_capped = 0
        self.check = settings.CHECK_TILING

    def try_split(self, container: Container) -> Optional[Tuple[AxialCut, Container, Container]]:
        """Split a container, or return None when it has to stay a leaf."""
        if container.depth >= settings.DEPTH_CAP:
            self.depth_capped += 1
            logger.warning(
                "container %d reached the depth cap %d", container.id, settings.DEPTH_CAP
            )
            return None
        if container.n_samples < 2:
            return None
        try:
            decision = choose_split(container, self.rule, self.rng)
        except DegenerateContainerError as exc:
            self.retired += 1
            logger.debug("retiring container %d as a leaf: %s", container.id, exc)
            return None
        left, right = split(container, decision.cut, self.ids)
        if self.check:
            _check_children(container, left, right)
        return decision.cut, left, right

    def grow(self, root: Container, stop: StoppingRule) -> List[Container]:
        leaves = []
        queue = deque([root])
        while queue:
            container = queue.popleft()
            if stop.is_satisfied(container):
                leaves.append(container)
                continue
            outcome = self.try_split(container)
            if outcome is None:
                leaves.append(container)
                continue
            cut, left, right = outcome
            self.log.append(BuildStep(container.id, cut, left.id, right.id))
            queue.extend((left, right))
        return leaves


def _root(batch: SampleBatch, domain: Domain) -> Container:
    if len(batch) == 0:
        raise EmptyInputError("cannot build a tree from an empty sample batch")
    if batch.dim != domain.dim:
        raise InvalidInputError(f"batch has dimension {batch.dim}, domain has {domain.dim}")
    if not np.all(domain.contains(batch.locations)):
        raise InvalidInputError("sample batch has locations outside the domain")
    return Container(domain, batch.locations, batch.values, depth=0, id=0)


def build_tq_s(
    batch: SampleBatch,
    problem: Problem,
    rule: SplitRule = SplitRule.MINSSE,
    stop: Optional[StoppingRule] = None,
    rng: Optional[np.random.Generator] = None,
) -> Tree:
    """
    Grow a regression tree over a fixed sample batch.

    Args:
        batch: Initial samples inside the problem domain
        problem: Problem the batch was drawn for (supplies the domain)
        rule: Split rule
        stop: Stopping rule; ``default_stopping`` for the problem dimension when omitted
        rng: Generator for the random split rule

    Returns:
        Tree whose leaves each satisfy ``stop`` unless retired as unsplittable

    Raises:
        EmptyInputError: the batch holds no samples
    """
    root = _root(batch, problem.domain)
    stop = stop if stop is not None else default_stopping(problem.dim, batch.values)
    builder = _TreeBuilder(problem.domain, rule, rng)
    leaves = builder.grow(root, stop)
    leaves.sort(key=lambda leaf: leaf.id)
    logger.debug(
        "built %s tree: %d leaves, %d splits, %d retired",
        builder.rule.value,
        len(leaves),
        len(builder.log),
        builder.retired,
    )
    return Tree(
        domain=problem.domain,
        leaves=leaves,
        split_rule=builder.rule,
        build_log=builder.log,
        evals_sampling=batch.evaluations,
        retired=builder.retired,
        depth_capped=builder.depth_capped,
    )


def build_tq_a(
    batch: SampleBatch,
    problem: Problem,
    rule: SplitRule = SplitRule.MINSSE,
    stop: Optional[StoppingRule] = None,
    budget: int = 0,
    rng: Optional[np.random.Generator] = None,
) -> Tree:
    """
    Grow a tree with ``build_tq_s`` and then refine it actively.

    Leaves wait in a max-priority queue keyed by inaccuracy (range of Y),
    then larger volume, then lower id. Each pop draws one uniform point in
    the container, evaluates it, adds it and splits the container; both
    children rejoin the queue. A container that cannot be split goes back
    with priority 0.

    Args:
        batch: Initial samples
        problem: Problem to evaluate new points on
        rule: Split rule for both phases
        stop: Stopping rule for the first phase
        budget: Integrand evaluations to spend on refinement
        rng: Generator for new locations and the random split rule

    Returns:
        Refined tree; ``evals_active`` equals ``budget``
    """
    if budget < 0:
        raise InvalidSampleCountError(f"refinement budget must be >= 0, got {budget}")
    rng = rng if rng is not None else np.random.default_rng()

    root = _root(batch, problem.domain)
    stop = stop if stop is not None else default_stopping(problem.dim, batch.values)
    builder = _TreeBuilder(problem.domain, rule, rng)
    leaves = builder.grow(root, stop)

    heap: List[Tuple[float, float, int, Container]] = []

    def push(container: Container, priority: Optional[float] = None) -> None:
        score = container.inaccuracy() if priority is None else priority
        heapq.heappush(heap, (-score, -container.volume(), container.id, container))

    for leaf in leaves:
        push(leaf)

    pops: List[RefinementPop] = []
    spent = 0
    while spent < budget:
        neg_score, _, container_id, container = heapq.heappop(heap)
        pops.append(RefinementPop(container_id, -neg_score, -heap[0][0] if heap else 0.0))

        bounds = container.bounds
        x = rng.uniform(bounds.lower, bounds.upper)
        y = float(problem.integrand(x))
        spent += 1
        grown = container.with_sample(x, y)
        added = tuple(float(v) for v in x)

        outcome = builder.try_split(grown)
        if outcome is None:
            builder.log.append(BuildStep(container_id, added_location=added, added_value=y))
            push(grown, 0.0)
            continue
        cut, left, right = outcome
        builder.log.append(BuildStep(container_id, cut, left.id, right.id, added, y))
        push(left)
        push(right)

    final = sorted((entry[3] for entry in heap), key=lambda leaf: leaf.id)
    return Tree(
        domain=problem.domain,
        leaves=final,
        split_rule=builder.rule,
        build_log=builder.log,
        evals_sampling=batch.evaluations,
        evals_active=spent,
        retired=builder.retired,
        depth_capped=builder.depth_capped,
        refinement_log=pops,
    )


def replay_tree(
    batch: SampleBatch,
    domain: Domain,
    build_log: Sequence[BuildStep],
    split_rule: SplitRule = SplitRule.MINSSE,
) -> Tree:
    """
    Rebuild a tree from its initial batch and build log, without re-running any split rule.

    Raises:
        InvalidInputError: the log references a container that is not a current leaf
    """
    live: Dict[int, Container] = {0: _root(batch, domain)}
    active = 0
    for step in build_log:
        if step.container_id not in live:
            raise InvalidInputError(f"build log splits unknown container {step.container_id}")
        container = live.pop(step.container_id)
        if step.added_location is not None:
            container = container.with_sample(np.asarray(step.added_location), step.added_value)
            active += 1
        if step.cut is None:
            live[container.id] = container
            continue
        ids = iter((step.left_id, step.right_id))
        left, right = split(container, step.cut, ids)  # type: ignore[arg-type]
        live[left.id] = left
        live[right.id] = right
    return Tree(
        domain=domain,
        leaves=sorted(live.values(), key=lambda leaf: leaf.id),
        split_rule=SplitRule(split_rule),
        build_log=list(build_log),
        evals_sampling=batch.evaluations,
        evals_active=active,
    )


def _leaf_stream(seed: int, leaf_id: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(leaf_id,)))


def integrate_tree(
    tree: Tree,
    problem: Problem,
    leaf_rule: LeafRule = LeafRule.RANDOM,
    m: int = settings.DEFAULT_LEAF_EVALS,
    seed: int = 0,
    leaf_evals: Optional[Sequence[int]] = None,
    method: str = "tq",
) -> IntegralResult:
    """
    Integrate every leaf and sum the contributions.

    Each leaf draws from its own stream derived from ``(seed, leaf id)``, so a
    leaf's estimate does not depend on the order leaves are visited. The
    random rule gathers every leaf's points into a single integrand call.

    Args:
        tree: Built tree
        problem: Problem to evaluate
        leaf_rule: Container integral rule
        m: Evaluations per leaf for the random rule
        seed: Seed the per-leaf streams derive from
        leaf_evals: Per-leaf evaluation counts overriding ``m`` (random rule only)
        method: Tag recorded on the result

    Returns:
        IntegralResult with per-leaf contributions and the evaluation ledger
    """
    rule = LeafRule(leaf_rule)
    leaves = tree.leaves
    lower, upper = tree.leaf_bounds()
    volumes = np.prod(upper - lower, axis=1)
    fallbacks = 0

    if rule is LeafRule.RANDOM:
        counts = np.full(len(leaves), m, dtype=np.int64)
        if leaf_evals is not None:
            counts = np.asarray(leaf_evals, dtype=np.int64)
            if counts.shape != (len(leaves),):
                raise InvalidInputError(f"{counts.size} leaf counts for {len(leaves)} leaves")
        if counts.min() < 1:
            raise InvalidSampleCountError("every leaf needs at least one evaluation")
        points = np.concatenate(
            [
                _leaf_stream(seed, leaf.id).uniform(lo, hi, size=(int(k), tree.domain.dim))
                for leaf, lo, hi, k in zip(leaves, lower, upper, counts)
            ]
        )
        values = np.asarray(problem.integrand(points))
        starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
        contributions = volumes * (np.add.reduceat(values, starts) / counts)
        extra = int(counts.sum())
    elif rule is LeafRule.MIDPOINT:
        values = np.asarray(problem.integrand(0.5 * (lower + upper)))
        contributions = volumes * values
        extra = len(leaves)
    else:
        contributions = np.empty(len(leaves))
        extra = 0
        for k, leaf in enumerate(leaves):
            outcome = integrate_container(leaf, problem, rule, m)
            contributions[k] = outcome.value
            extra += outcome.extra_evals
            fallbacks += int(outcome.fallback)
        if fallbacks:
            logger.warning(
                "%d empty leaves integrated with the midpoint rule instead of %s",
                fallbacks,
                rule.value,
            )

    return IntegralResult(
        value=float(np.sum(contributions)),
        method=method,
        seed=seed,
        evals_sampling=tree.evals_sampling,
        evals_active=tree.evals_active,
        evals_leaf_integration=extra,
        leaf_ids=np.asarray([leaf.id for leaf in leaves], dtype=np.int64),
        lower=lower,
        upper=upper,
        contributions=contributions,
        leaf_rule=rule.value,
        split_rule=tree.split_rule.value,
        fallbacks=fallbacks,
        details={
            "n_leaves": len(leaves),
            "retired": tree.retired,
            "depth_capped": tree.depth_capped,
        },
        locator=tree.locator(),
    )
