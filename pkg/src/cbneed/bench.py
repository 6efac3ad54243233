"""The size-explosion family and its measurements.

``t(n) I`` reaches ``u(n)`` in n beta steps while ``u(n)`` has at least
2^n nodes.  With sharing, the weak strategies stop after n multiplicative
steps on a program of linear size whose unfolding is ``u(n)``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Optional, Union

from .engines import Strategy, run
from .normalforms import UnfoldTooLarge, onorm, ufnorm, unfold
from .oracle import ref_beta_normalize
from .syntax import Abs, App, Program, Term, Var, alpha_eq, identity, size

__all__ = [
    "gen_t", "gen_u", "size", "FamilyPoint", "run_family", "to_csv", "to_json",
    "SIZE_CONSTANT", "CSV_COLUMNS",
]

# final program size of the useful run is 7n + 2, measured once
SIZE_CONSTANT = 9

CSV_COLUMNS = ("n", "beta_steps", "um", "ue", "final_size", "unfold_size")


def _level_names(depth: int) -> tuple:
    if depth == 0:
        return "x", "y"
    return f"x{depth}", f"y{depth}"


def _duplicator(x: str, y: str) -> Abs:
    """``\\y. y x x``."""
    return Abs(y, App(App(Var(y), Var(x)), Var(x)))


def gen_t(n: int, depth: int = 0) -> Term:
    """``t1 = \\x.\\y.y x x`` and ``t(n+1) = \\x.t(n) (\\y.y x x)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    x, y = _level_names(depth)
    if n == 1:
        return Abs(x, _duplicator(x, y))
    return Abs(x, App(gen_t(n - 1, depth + 1), _duplicator(x, y)))


def gen_u(n: int) -> Term:
    """``u0 = I`` and ``u(n+1) = \\y.y u(n) u(n)``, built with sharing."""
    if n < 0:
        raise ValueError("n must be non-negative")
    u: Term = identity()
    for _ in range(n):
        u = Abs("y", App(App(Var("y"), u), u))
    return u


@dataclass
class FamilyPoint:
    n: int
    t_n_size: int
    u_n_size: int
    beta_steps: Optional[int]
    beta_matches: bool
    strategy_counts: dict = field(default_factory=dict)
    final_program_size: int = 0
    final_class: str = ""
    open_class: str = ""
    unfold_size: Union[int, str] = "capped"
    unfold_matches: Optional[bool] = None

    @property
    def um(self) -> int:
        return self.strategy_counts["useful"]["um"]

    @property
    def ue(self) -> int:
        return self.strategy_counts["useful"]["ue"]


def run_family(n_max: int, n_min: int = 1, unfold_cap: int | None = None) -> list:
    points = []
    for n in range(n_min, n_max + 1):
        start = App(gen_t(n), identity())
        target = gen_u(n)
        beta = ref_beta_normalize(start, fuel=n + 1)
        beta_steps = None if beta is None else beta[1]
        beta_ok = beta is not None and beta[1] == n and alpha_eq(beta[0], target)
        counts = {}
        finals = {}
        for strategy in (Strategy.OPEN, Strategy.USEFUL):
            report = run(Program(start), strategy, keep_trace=False)
            counts[strategy.value] = {str(k): v for k, v in report.counts.items()}
            finals[strategy] = report.final
        final = finals[Strategy.USEFUL]
        point = FamilyPoint(
            n=n, t_n_size=size(start), u_n_size=size(target),
            beta_steps=beta_steps, beta_matches=beta_ok,
            strategy_counts=counts, final_program_size=size(final),
            final_class=str(ufnorm(final)),
            open_class=str(onorm(finals[Strategy.OPEN])),
        )
        try:
            unfolded = unfold(final, unfold_cap)
        except UnfoldTooLarge:
            pass
        else:
            point.unfold_size = size(unfolded)
            point.unfold_matches = alpha_eq(unfolded, target)
        points.append(point)
    return points


def _row(point: FamilyPoint) -> dict:
    return {"n": point.n, "beta_steps": point.beta_steps, "um": point.um,
            "ue": point.ue, "final_size": point.final_program_size,
            "unfold_size": point.unfold_size}


def to_csv(points: list) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for point in points:
        writer.writerow(_row(point))
    return buf.getvalue()


def to_json(points: list) -> str:
    return json.dumps([asdict(p) for p in points], indent=2)
