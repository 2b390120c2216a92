"""Seeded experiment sweeps, event-probability estimation and linearity fits.

Config documents are JSON objects. Sweep axes (each a list, or a scalar that
is treated as a one-element list):

    n, p, r, eta, pattern, strategy, M, q

``p`` and ``q`` entries may be formula strings over ``n`` (and ``p`` for
``q``), e.g. ``"8*log(n)/n"`` or ``"2*ceil((n*p)**1.5)"``. Scalars:

    trials, base_seed, target ("r" | "eta" | "tree", the predicate a random
    colouring is checked against), max_iters, constants (dict for the bound
    columns: D, D0, D1, D2, ...), output (CSV path), workers.

Cells are the cartesian product of the axes in the order listed above.
"""

from __future__ import annotations

import ast
import csv
import io
import itertools
import json
import math
import operator
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np
from scipy import stats

from .bounds import theorem_bounds
from .colouring import (INFINITY, Colouring, is_eta_injective, is_r_unique,
                        is_tree_unique)
from .construct import (PlanDoesNotFit, partition_classes, partition_colouring,
                        random_colouring, resample_tree_unique)
from .graph import GenParams, Graph, generate
from .patterns import CopyCapExceeded, TreePattern, contains_copy, parse_pattern

MASK64 = (1 << 64) - 1
AXES = ("n", "p", "r", "eta", "pattern", "strategy", "M", "q")
STRATEGIES = ("partition", "random", "resample")
CSV_COLUMNS = ("cell", "trial", "n", "p", "r", "eta", "pattern", "strategy", "M", "q",
               "seed", "colours_used", "verified", "attempts", "reason",
               "lower_bound", "upper_bound")


# --- seeds -----------------------------------------------------------------


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_seed(base: int, cell: int, trial: int) -> int:
    """Per-trial seed: splitmix64 chained over (base, cell, trial)."""
    return splitmix64(splitmix64(splitmix64(base & MASK64) ^ cell) ^ trial)


def strategy_seed(trial_seed: int) -> int:
    # colouring randomness must not reuse the graph's stream
    return splitmix64(trial_seed ^ 0xC0102)


# --- formula rules ---------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow, ast.FloorDiv: operator.floordiv}
_FUNCS = {"log": math.log, "sqrt": math.sqrt, "ceil": math.ceil, "floor": math.floor,
          "exp": math.exp, "min": min, "max": max}


def eval_rule(expr: str | float | int, **names: float) -> float:
    """Evaluate an arithmetic formula such as ``"8*log(n)/n"`` over ``names``."""
    if not isinstance(expr, str):
        return expr

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return node.value
        if isinstance(node, ast.Name):
            if node.id in names:
                return names[node.id]
            if node.id in ("e", "pi"):
                return getattr(math, node.id)
            raise ValueError(f"unknown name {node.id!r} in rule {expr!r}")
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            return _FUNCS[node.func.id](*(ev(a) for a in node.args))
        raise ValueError(f"unsupported syntax in rule {expr!r}")

    return ev(ast.parse(expr, mode="eval"))


# --- config and results ----------------------------------------------------


@dataclass(frozen=True)
class Cell:
    index: int
    n: int
    p: Any            # number or rule string
    r: Any = None     # int, "inf" or None
    eta: float | None = None
    pattern: str | None = None
    strategy: str = "partition"
    M: float | None = None
    q: Any = None     # int or rule string
    target: str = "r"
    max_iters: int | None = None
    constants: tuple = ()

    def p_value(self) -> float:
        return float(eval_rule(self.p, n=self.n))

    def q_value(self) -> int | None:
        if self.q is None:
            return None
        return int(math.ceil(eval_rule(self.q, n=self.n, p=self.p_value())))

    def r_value(self):
        if self.r is None:
            return None
        return INFINITY if self.r in ("inf", INFINITY) else int(self.r)


@dataclass
class ExperimentConfig:
    n: list
    p: list
    r: list = field(default_factory=lambda: [None])
    eta: list = field(default_factory=lambda: [None])
    pattern: list = field(default_factory=lambda: [None])
    strategy: list = field(default_factory=lambda: ["partition"])
    M: list = field(default_factory=lambda: [None])
    q: list = field(default_factory=lambda: [None])
    trials: int = 1
    base_seed: int = 0
    target: str = "r"
    max_iters: int | None = None
    constants: dict = field(default_factory=dict)
    output: str | None = None
    workers: int = 1

    def __post_init__(self):
        for axis in AXES:
            val = getattr(self, axis)
            if not isinstance(val, list):
                setattr(self, axis, [val])
            if not getattr(self, axis):
                raise ValueError(f"axis {axis!r} is empty")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.target not in ("r", "eta", "tree"):
            raise ValueError("target must be 'r', 'eta' or 'tree'")
        for s in self.strategy:
            if s not in STRATEGIES:
                raise ValueError(f"unknown strategy {s!r}")

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**doc)

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def cells(self) -> list[Cell]:
        consts = tuple(sorted(self.constants.items()))
        out = []
        for i, combo in enumerate(itertools.product(*(getattr(self, a) for a in AXES))):
            kw = dict(zip(AXES, combo))
            out.append(Cell(index=i, target=self.target, max_iters=self.max_iters,
                            constants=consts, **kw))
        return out


@dataclass
class TrialResult:
    cell: int
    trial: int
    n: int
    p: float
    r: Any
    eta: Any
    pattern: Any
    strategy: str
    M: Any
    q: Any
    seed: int
    colours_used: int | None
    verified: bool | None
    attempts: int | None
    reason: str | None
    lower_bound: float | None
    upper_bound: float | None
    wall_time: float = field(default=0.0, compare=False)

    def csv_row(self) -> list[str]:
        return [_fmt(getattr(self, c)) for c in CSV_COLUMNS]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return "inf" if x == math.inf else repr(x)
    return str(x)


def _mode(cell: Cell) -> str:
    if cell.strategy == "partition":
        return "r"
    if cell.strategy == "resample":
        return "tree"
    return cell.target


def _cell_bounds(cell: Cell, n: int, p: float, pattern: TreePattern | None):
    consts = dict(cell.constants)
    mode = _mode(cell)
    try:
        if mode == "r" and cell.r is not None:
            rep = theorem_bounds("r-unique", n, p, r=cell.r_value(), constants=consts)
        elif mode == "eta" and cell.eta is not None and cell.eta < 1:
            rep = theorem_bounds("eta-injective", n, p, eta=cell.eta, constants=consts)
        elif mode == "tree" and pattern is not None:
            rep = theorem_bounds("tree-unique", n, p, t=pattern.t, constants=consts)
        else:
            return None, None
    except ValueError:
        return None, None
    return rep.lower, rep.upper


def run_trial(cell: Cell, trial: int, seed: int, keep: bool = False):
    """Run one (cell, trial). With ``keep`` also return the graph and colouring."""
    start = time.perf_counter()
    n, p = cell.n, cell.p_value()
    pattern = parse_pattern(cell.pattern) if cell.pattern else None
    q = cell.q_value()
    r = cell.r_value()
    lower, upper = _cell_bounds(cell, n, p, pattern)
    base = dict(cell=cell.index, trial=trial, n=n, p=p, r=cell.r, eta=cell.eta,
                pattern=cell.pattern, strategy=cell.strategy, M=cell.M, q=q, seed=seed,
                lower_bound=lower, upper_bound=upper)

    def done(colours_used, verified, attempts, reason, g=None, f=None):
        res = TrialResult(**base, colours_used=colours_used, verified=verified,
                          attempts=attempts, reason=reason,
                          wall_time=time.perf_counter() - start)
        return (res, g, f) if keep else res

    if cell.strategy == "partition":
        if r is None or cell.M is None:
            return done(None, None, None, "missing_parameter")
        try:
            t, size = partition_classes(n, r, p, cell.M)
        except PlanDoesNotFit:
            return done(None, None, None, "plan_does_not_fit")
        if t * size > n:
            return done(None, None, None, "plan_does_not_fit")

    g = generate(GenParams(n, p, seed))
    cseed = strategy_seed(seed)

    if cell.strategy == "partition":
        out = partition_colouring(g, r, p, cell.M)
        return done(out.colours_used, out.verified, out.attempts, None, g, out.colouring)

    if cell.strategy == "random":
        if q is None:
            return done(None, None, None, "missing_parameter")
        out = random_colouring(g, q, cseed)
        f = out.colouring
        try:
            if cell.target == "r" and r is not None:
                ok = is_r_unique(g, f, r)
            elif cell.target == "eta" and cell.eta is not None:
                ok = is_eta_injective(g, f, cell.eta)
            elif cell.target == "tree" and pattern is not None:
                ok = is_tree_unique(g, f, pattern)
            else:
                return done(out.colours_used, None, 0, "missing_parameter", g, f)
        except CopyCapExceeded:
            return done(out.colours_used, None, 0, "cap_exceeded", g, f)
        return done(out.colours_used, ok, 0, None, g, f)

    if q is None or pattern is None:
        return done(None, None, None, "missing_parameter")
    try:
        out = resample_tree_unique(g, pattern, q, cseed, max_iters=cell.max_iters)
    except CopyCapExceeded:
        return done(None, None, None, "cap_exceeded", g)
    return done(out.colours_used, out.verified, out.attempts, out.reason, g, out.colouring)


def _run_job(job):
    return run_trial(*job)


def summarise(results: Sequence[TrialResult]) -> list[dict]:
    rows = []
    for cell, group in itertools.groupby(results, key=lambda t: t.cell):
        group = list(group)
        verified = [t for t in group if t.verified]
        used = [t.colours_used for t in group if t.colours_used is not None]
        reasons: dict[str, int] = {}
        for t in group:
            if t.reason:
                reasons[t.reason] = reasons.get(t.reason, 0) + 1
        first = group[0]
        rows.append({
            "cell": cell, "n": first.n, "p": first.p, "r": first.r, "eta": first.eta,
            "pattern": first.pattern, "strategy": first.strategy, "M": first.M, "q": first.q,
            "trials": len(group),
            "success_fraction": len(verified) / len(group),
            "mean_colours_used": sum(used) / len(used) if used else None,
            "failures": reasons,
            "lower_bound": first.lower_bound, "upper_bound": first.upper_bound,
        })
    return rows


def results_to_csv(results: Iterable[TrialResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for t in results:
        w.writerow(t.csv_row())
    return buf.getvalue()


def run_experiment(config: ExperimentConfig, output: str | Path | None = None) -> list[TrialResult]:
    """Run every (cell, trial); write the CSV and a ``.summary.json`` if an output path is set.

    Results come back in (cell, trial) order whatever the worker count.
    """
    jobs = []
    seen = set()
    for cell in config.cells():
        for trial in range(config.trials):
            seed = derive_seed(config.base_seed, cell.index, trial)
            if seed in seen:
                raise RuntimeError(f"seed collision at cell {cell.index}, trial {trial}")
            seen.add(seed)
            jobs.append((cell, trial, seed))
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_run_job, jobs, chunksize=max(1, len(jobs) // (4 * config.workers))))
    else:
        results = [_run_job(j) for j in jobs]

    output = output or config.output
    if output:
        out = Path(output)
        out.write_text(results_to_csv(results))
        summary = {"cells": summarise(results), "trials": len(results)}
        out.with_suffix(".summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return results


# --- estimation ------------------------------------------------------------


def clopper_pearson(successes: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    a = 1 - level
    lo = 0.0 if successes == 0 else float(stats.beta.ppf(a / 2, successes, trials - successes + 1))
    hi = 1.0 if successes == trials else float(stats.beta.ppf(1 - a / 2, successes + 1, trials - successes))
    return lo, hi


@dataclass(frozen=True)
class EventEstimate:
    fraction: float
    ci_low: float
    ci_high: float
    successes: int
    trials: int      # trials that counted
    excluded: int    # trials dropped for hitting the copy cap

    def as_dict(self) -> dict:
        return asdict(self)


def estimate_event_probability(n: int, p: float, pattern: TreePattern, trials: int,
                               seed: int, level: float = 0.95) -> EventEstimate:
    """Fraction of G(n, p) samples containing a copy of ``pattern``, with a
    Clopper-Pearson interval."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    if n < pattern.t:
        lo, hi = clopper_pearson(0, trials, level)
        return EventEstimate(0.0, lo, hi, 0, trials, 0)
    hits = used = excluded = 0
    for i in range(trials):
        g = generate(GenParams(n, p, derive_seed(seed, 0, i)))
        try:
            hits += contains_copy(g, pattern)
            used += 1
        except CopyCapExceeded:
            excluded += 1
    lo, hi = clopper_pearson(hits, used, level)
    return EventEstimate(hits / used if used else 0.0, lo, hi, hits, used, excluded)


def binomial_tail_frequency(trials: int, prob: float, gamma: float, samples: int, seed: int) -> float:
    """Observed P(|T - E T| >= gamma E T) over ``samples`` draws of T ~ Binomial(trials, prob)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    mean = trials * prob
    draws = rng.binomial(trials, prob, size=samples)
    return float(np.mean(np.abs(draws - mean) >= gamma * mean))


# --- linearity -------------------------------------------------------------


@dataclass(frozen=True)
class LinearityReport:
    slope: float
    intercept: float
    r_squared: float
    points: tuple[tuple[float, float], ...]
    linear: bool    # R^2 >= threshold
    growing: bool   # slope meaningfully positive


def linearity_check(results: Sequence[TrialResult] | Sequence[tuple[float, float]],
                    axis: str = "r", threshold: float = 0.99,
                    min_value: float | None = None) -> LinearityReport:
    """Least-squares fit of mean colours used against ``axis`` over verified trials."""
    if results and isinstance(results[0], TrialResult):
        by_x: dict[float, list[int]] = {}
        for t in results:
            x = getattr(t, axis)
            if not t.verified or t.colours_used is None or x is None or x == "inf":
                continue
            by_x.setdefault(float(x), []).append(t.colours_used)
        pts = [(x, sum(v) / len(v)) for x, v in sorted(by_x.items())]
    else:
        pts = sorted((float(x), float(y)) for x, y in results)
    if min_value is not None:
        pts = [pt for pt in pts if pt[0] >= min_value]
    if len({x for x, _ in pts}) < 3:
        raise ValueError("need at least 3 distinct axis values with successful colourings")
    xs = np.array([x for x, _ in pts])
    ys = np.array([y for _, y in pts])
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    ss_res = float(np.sum(resid**2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    growing = bool(slope > 1e-9 * max(1.0, float(np.abs(ys).max())))
    return LinearityReport(float(slope), float(intercept), r2, tuple(pts),
                           linear=r2 >= threshold and growing, growing=growing)
