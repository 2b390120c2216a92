"""Closed-form quantities and theoretical colour-number bounds.

All logarithms are natural. Evaluators report which hypotheses hold for the
given finite inputs; they never claim the asymptotic probability guarantees.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping


def chernoff_bound(theta_r: float, gamma: float) -> float:
    """2 exp(-gamma^2 theta_r / 4), bounding P(|T - theta_r| >= gamma theta_r)."""
    if theta_r <= 0:
        raise ValueError("theta_r must be positive")
    if not 0 < gamma <= 0.5:
        raise ValueError("gamma must lie in (0, 1/2]")
    return 2.0 * math.exp(-gamma * gamma * theta_r / 4.0)


def alpha(p: float) -> float:
    """Probability that a vertex has exactly one neighbour in a class of 1/p vertices."""
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    return math.exp((1.0 / p - 1.0) * math.log1p(-p))


def zeta_bound(d: int, q: float, r: int) -> float:
    """d e^d (e d / q)^((d - r) / 2), evaluated in log space."""
    if r < 0 or d < r:
        raise ValueError("need d >= r >= 0")
    if q <= 0:
        raise ValueError("q must be positive")
    if d == 0:
        return 0.0
    log_val = math.log(d) + d + 0.5 * (d - r) * (1.0 + math.log(d) - math.log(q))
    return math.exp(log_val)


def packing_lower_bound(n: int, p: float, C: float) -> float:
    """n / s with s = 2 ln(n) / (C p): colours needed when no class exceeds s vertices."""
    if n < 2 or not 0 < p < 1:
        raise ValueError("need n >= 2 and 0 < p < 1")
    if C <= 0:
        raise ValueError("C must be positive")
    return C * n * p / (2.0 * math.log(n))


@dataclass(frozen=True)
class LLLReport:
    holds: bool              # sufficient check q^z >= 2 C3 (np)^(2z-1)
    margin: float            # q^z / (2 C3 (np)^(2z-1)); >= 1 iff holds
    required_q: float        # (2 C3 (np)^(2z-1))^(1/z)
    y: float                 # 2 z (z e / q)^z
    neighbour_bound: float   # C2 (np)^(2z-1)
    local_lemma_inequality: bool  # y (1 - y)^neighbour_bound >= y / 2


def lll_condition(q: float, z: int, np_: float, C2: float = 1.0, C3: float = 1.0) -> LLLReport:
    if z < 1:
        raise ValueError("z must be >= 1")
    if q < 2 * z:
        raise ValueError(f"q must be at least 2z = {2 * z}")
    if np_ <= 0 or C2 <= 0 or C3 <= 0:
        raise ValueError("np, C2 and C3 must be positive")
    e = 2 * z - 1
    log_rhs = math.log(2 * C3) + e * math.log(np_)
    log_margin = z * math.log(q) - log_rhs
    y = 2 * z * (z * math.e / q) ** z
    nb = C2 * np_**e
    if y >= 1:
        lll_ok = False
    else:
        # y (1-y)^nb >= y/2  <=>  nb * log(1-y) >= -log 2
        lll_ok = nb * math.log1p(-y) >= -math.log(2)
    return LLLReport(
        holds=log_margin >= 0,
        margin=math.exp(log_margin) if log_margin < 700 else math.inf,
        required_q=math.exp(log_rhs / z),
        y=y,
        neighbour_bound=nb,
        local_lemma_inequality=lll_ok,
    )


@dataclass
class BoundReport:
    name: str
    inputs: dict
    lower: float | None
    upper: float | None
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"name": self.name, "inputs": self.inputs, "lower": self.lower,
                "upper": self.upper, "notes": self.notes}


KINDS = ("eta-injective", "r-unique", "tree-unique")


def theorem_bounds(kind: str, n: int, p: float, *, eta: float | None = None,
                   r: float | None = None, t: int | None = None,
                   constants: Mapping[str, float] | None = None) -> BoundReport:
    """Evaluate the lower/upper colour-number bounds for one colouring kind.

    eta-injective: (eta n p / 2, D n p); r-unique: (r, D0 max(r, ln n));
    tree-unique: (D1 n p / ln n, D2 (n p)^(2 (1 - 1/t))). A side whose
    constant is absent from ``constants`` is reported as ``None``.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if n < 2 or not 0 < p < 1:
        raise ValueError("need n >= 2 and 0 < p < 1")
    given = {"eta": eta, "r": r, "t": t}
    wanted = {"eta-injective": "eta", "r-unique": "r", "tree-unique": "t"}[kind]
    extra = [k for k, v in given.items() if v is not None and k != wanted]
    if given[wanted] is None or extra:
        raise ValueError(f"{kind} takes exactly the parameter {wanted!r}"
                         + (f"; unexpected {extra}" if extra else ""))
    consts = dict(constants or {})
    np_ = n * p
    ln_n = math.log(n)
    notes: list[str] = []
    lower = upper = None

    if kind == "eta-injective":
        if not 0 < eta < 1:
            raise ValueError("eta must lie in (0, 1)")
        lower = eta * np_ / 2
        if "D" in consts:
            upper = consts["D"] * np_
        if "M" in consts:
            ok = p >= consts["M"] * ln_n / n
            notes.append(f"p >= M ln(n)/n: {'holds' if ok else 'fails'}")
    elif kind == "r-unique":
        if r != math.inf and (r < 1 or int(r) != r):
            raise ValueError("r must be a positive integer")
        lower = float(r)
        if "D0" in consts:
            upper = consts["D0"] * max(r, ln_n)
        if "M0" in consts:
            ok = p >= consts["M0"] * ln_n / n
            notes.append(f"p >= M0 ln(n)/n: {'holds' if ok else 'fails'}")
        if "theta" in consts:
            ok = r <= consts["theta"] * np_
            notes.append(f"r <= theta n p: {'holds' if ok else 'fails'}")
    else:
        if t < 2 or int(t) != t:
            raise ValueError("t must be an integer >= 2")
        if "D1" in consts:
            lower = consts["D1"] * np_ / ln_n
        if "D2" in consts:
            upper = consts["D2"] * np_ ** (2 * (1 - 1 / t))

    if lower is not None and upper is not None and lower > upper:
        notes.append("configuration error: lower bound exceeds upper bound for these constants")
    inputs = {"n": n, "p": p, **{k: v for k, v in given.items() if v is not None}, "constants": consts}
    return BoundReport(kind, inputs, lower, upper, notes)
