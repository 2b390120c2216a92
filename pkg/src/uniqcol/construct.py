"""Constructive colouring strategies: class partition, uniform random, and
resampling of uniqueness-violating tree copies."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .colouring import Colouring, check_r, has_unique_colour, is_r_unique
from .graph import Graph, make_rng
from .patterns import DEFAULT_COPY_CAP, TreePattern, enumerate_copies


class PlanDoesNotFit(ValueError):
    """The partition plan needs more vertices than the graph has."""


@dataclass(frozen=True)
class PartitionPlan:
    t: int
    class_size: int
    classes: tuple[range, ...]

    @property
    def overflow_colour(self) -> int:
        return self.t + 1


@dataclass
class StrategyOutcome:
    strategy: str
    colouring: Colouring
    colours_used: int  # palette size of the produced colouring
    attempts: int
    verified: bool | None
    seed: int | None
    reason: str | None = None
    details: dict = field(default_factory=dict)


def partition_classes(n: int, r, p: float, M: float) -> tuple[int, int]:
    """Return ``(t, class_size)`` with t = ceil(M max(r, ln(n)/2)) + 1 and class_size = ceil(1/p)."""
    check_r(r)
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    if M <= 0:
        raise ValueError("M must be positive")
    if r == math.inf:
        raise PlanDoesNotFit("the partition plan needs a finite r")
    t = math.ceil(M * max(r, math.log(n) / 2)) + 1
    return t, math.ceil(1 / p)


def plan_partition(n: int, r, p: float, M: float) -> PartitionPlan:
    t, size = partition_classes(n, r, p, M)
    if t * size > n:
        raise PlanDoesNotFit(f"t * ceil(1/p) = {t} * {size} = {t * size} > n = {n}")
    return PartitionPlan(t, size, tuple(range(i * size, (i + 1) * size) for i in range(t)))


def partition_colouring(g: Graph, r, p: float, M: float) -> StrategyOutcome:
    """Colour class V_i (the i-th block of ceil(1/p) vertices) with i, everything else t+1."""
    plan = plan_partition(g.n, r, p, M)
    colours = [plan.overflow_colour] * g.n
    for i, block in enumerate(plan.classes, start=1):
        for v in block:
            colours[v] = i
    f = Colouring(tuple(colours), plan.t + 1)
    return StrategyOutcome(
        "partition", f, plan.t + 1, attempts=0, verified=is_r_unique(g, f, r), seed=None,
        details={"t": plan.t, "class_size": plan.class_size, "r": r, "M": M, "p": p},
    )


def random_colouring(g: Graph, q: int, seed: int) -> StrategyOutcome:
    if q < 1:
        raise ValueError("q must be >= 1")
    rng = make_rng(seed)
    colours = rng.integers(1, q + 1, size=g.n)
    return StrategyOutcome("random", Colouring(tuple(colours.tolist()), q), q,
                           attempts=0, verified=None, seed=seed)


def resample_tree_unique(g: Graph, pattern: TreePattern, q: int, seed: int,
                         max_iters: int | None = None,
                         cap: int | None = DEFAULT_COPY_CAP) -> StrategyOutcome:
    """Random start, then repeatedly recolour the lowest-index copy of ``pattern``
    that has no once-occurring colour, until none is left or ``max_iters``
    resamples have been spent.

    Raises :class:`~uniqcol.patterns.CopyCapExceeded` if the copy list is too large.
    """
    if q < 2:
        raise ValueError("q must be >= 2")
    copies = [c.mapping for c in enumerate_copies(g, pattern, cap)]
    if max_iters is None:
        max_iters = 100 * len(copies)
    rng = make_rng(seed)
    colours = rng.integers(1, q + 1, size=g.n).tolist()

    touching: list[list[int]] = [[] for _ in range(g.n)]
    for i, verts in enumerate(copies):
        for v in verts:
            touching[v].append(i)
    bad = {i for i, verts in enumerate(copies) if not has_unique_colour(colours, verts)}

    attempts = 0
    while bad and attempts < max_iters:
        verts = copies[min(bad)]
        for v, c in zip(verts, rng.integers(1, q + 1, size=len(verts)).tolist()):
            colours[v] = c
        attempts += 1
        for j in {j for v in verts for j in touching[v]}:
            if has_unique_colour(colours, copies[j]):
                bad.discard(j)
            else:
                bad.add(j)

    verified = not bad
    return StrategyOutcome(
        "resample", Colouring(tuple(colours), q), q, attempts=attempts, verified=verified,
        seed=seed, reason=None if verified else "max_iters",
        details={"copies": len(copies), "violating": len(bad), "max_iters": max_iters,
                 "pattern": str(pattern)},
    )
