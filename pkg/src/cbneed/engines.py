"""Steppers and drivers for Closed, Open and Useful Open call-by-need.

The search never materialises variable sets.  It walks the head spine,
scans the arguments of inert heads left to right, and jumps into the
environment entry of every variable it meets.  For the useful calculus it
also carries one boolean saying whether the current position is applied,
possibly through a chain of variable-to-variable entries, together with the
length of that chain.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .contexts import EnvCtx, HeadCtx, ctx_from_path, plug_prog
from .syntax import (Abs, App, NameSupply, Program, Term, Var, fresh_rename,
                     names, size)

__all__ = [
    "Strategy", "StepKind", "Step", "RunReport", "ClosedStuck",
    "find_redex", "step_closed", "step_open", "step_useful", "step", "run",
    "DEFAULT_FUEL", "TRACE_CAP",
]

DEFAULT_FUEL = 10_000
TRACE_CAP = 10_000


class Strategy(str, Enum):
    CLOSED = "closed"
    OPEN = "open"
    USEFUL = "useful"


class StepKind(str, Enum):
    CLOSED_MULT = "m"
    CLOSED_EXP = "e"
    OPEN_MULT = "om"
    OPEN_EXP = "oe"
    USEFUL_MULT = "um"
    USEFUL_EXP = "ue"

    def __str__(self) -> str:
        return self.value

    @property
    def multiplicative(self) -> bool:
        return self.value.endswith("m")


_KINDS = {
    Strategy.CLOSED: (StepKind.CLOSED_MULT, StepKind.CLOSED_EXP),
    Strategy.OPEN: (StepKind.OPEN_MULT, StepKind.OPEN_EXP),
    Strategy.USEFUL: (StepKind.USEFUL_MULT, StepKind.USEFUL_EXP),
}


class ClosedStuck(Exception):
    """The closed calculus reached a free variable in head position."""

    def __init__(self, variable: str, program: Program):
        super().__init__(f"stuck on free variable {variable!r}")
        self.variable = variable
        self.program = program


@dataclass(frozen=True)
class Redex:
    """Where the next step fires.

    ``location`` is -1 for the head or the index of the environment entry.
    ``chain`` lists the binders jumped through to get there.
    """
    multiplicative: bool
    location: int
    path: tuple
    chain: tuple
    na_count: int = 0
    variable: Optional[str] = None
    value: Optional[Term] = None

    def context(self, p: Program):
        if self.location < 0:
            ctx, _ = ctx_from_path(p.head, self.path)
            return HeadCtx(ctx, p.env)
        binder, content = p.env[self.location]
        ctx, _ = ctx_from_path(content, self.path)
        return EnvCtx(p.head, p.env[:self.location], binder, ctx,
                      p.env[self.location + 1:])

    def focus(self, p: Program) -> Term:
        term = p.head if self.location < 0 else p.env[self.location][1]
        return ctx_from_path(term, self.path)[1]


@dataclass(frozen=True)
class Step:
    kind: StepKind
    position: tuple
    before: Program
    after: Program
    context: object
    na_count: Optional[int] = None
    variable: Optional[str] = None
    value: Optional[Term] = None

    @property
    def path(self) -> list:
        chain, path = self.position
        return [*chain, *path]


class _Search:
    def __init__(self, p: Program, strategy: Strategy):
        self.env = p.env
        self.strategy = strategy
        self.program = p

    def binding(self, name: str, owner: int) -> int:
        """Index of the entry binding ``name`` as seen from ``owner``, or -1."""
        for j in range(owner + 1, len(self.env)):
            if self.env[j][0] == name:
                return j
        return -1

    def walk(self, t: Term, path: tuple, owner: int, applied: bool,
             chain: tuple, hops: int) -> Optional[Redex]:
        match t:
            case App(fun, arg):
                if isinstance(fun, Abs):
                    return Redex(True, owner, path, chain)
                found = self.walk(fun, path + (0,), owner, True, chain, hops)
                if found is not None or self.strategy is Strategy.CLOSED:
                    return found
                return self.walk(arg, path + (1,), owner, False, chain, 0)
            case Var(name):
                j = self.binding(name, owner)
                if j < 0:
                    if self.strategy is Strategy.CLOSED:
                        raise ClosedStuck(name, self.program)
                    return None
                content = self.env[j][1]
                if isinstance(content, Abs):
                    if self.strategy is Strategy.USEFUL and not applied:
                        return None
                    return Redex(False, owner, path, chain, hops, name, content)
                if isinstance(content, Var) and applied:
                    return self.walk(content, (), j, True, chain + (name,),
                                     hops + 1)
                return self.walk(content, (), j, False, chain + (name,), 0)
        return None


def find_redex(p: Program, strategy: Strategy) -> Optional[Redex]:
    """The unique redex the strategy fires next, or None if ``p`` is normal.

    Raises :class:`ClosedStuck` for the closed strategy on a free head
    variable.
    """
    if strategy is Strategy.CLOSED and isinstance(p.head, Abs):
        return None
    return _Search(p, strategy).walk(p.head, (), -1, False, (), 0)


def _fire(p: Program, redex: Redex, strategy: Strategy,
          supply: NameSupply) -> Step:
    mult_kind, exp_kind = _KINDS[strategy]
    ctx = redex.context(p)
    focus = redex.focus(p)
    position = (redex.chain, redex.path)
    if redex.multiplicative:
        lam, arg = focus.fun, focus.arg
        after = plug_prog(ctx, lam.body, ((lam.var, arg),))
        return Step(mult_kind, position, p, after, ctx)
    copy = fresh_rename(redex.value, supply)
    after = plug_prog(ctx, copy)
    na = redex.na_count if strategy is Strategy.USEFUL else None
    return Step(exp_kind, position, p, after, ctx, na, redex.variable,
                redex.value)


def step(p: Program, strategy: Strategy,
         supply: NameSupply | None = None) -> Optional[Step]:
    strategy = Strategy(strategy)
    redex = find_redex(p, strategy)
    if redex is None:
        return None
    return _fire(p, redex, strategy, supply or NameSupply(names(p)))


def step_closed(p: Program, supply: NameSupply | None = None) -> Optional[Step]:
    return step(p, Strategy.CLOSED, supply)


def step_open(p: Program, supply: NameSupply | None = None) -> Optional[Step]:
    return step(p, Strategy.OPEN, supply)


def step_useful(p: Program, supply: NameSupply | None = None) -> Optional[Step]:
    return step(p, Strategy.USEFUL, supply)


@dataclass
class RunReport:
    initial: Program
    final: Program
    strategy: Strategy
    steps: list = field(default_factory=list)
    counts: Counter = field(default_factory=Counter)
    fuel_exhausted: bool = False
    stuck: Optional[str] = None
    trace_truncated: bool = False

    @property
    def sizes(self) -> dict:
        return {"initial": size(self.initial), "final": size(self.final)}

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def count(self, kind) -> int:
        return self.counts.get(StepKind(kind), 0)


def run(p: Program, strategy: Strategy = Strategy.USEFUL,
        fuel: int = DEFAULT_FUEL, keep_trace: bool = True) -> RunReport:
    """Iterate the stepper until a normal form or until ``fuel`` steps."""
    if fuel < 1:
        raise ValueError("fuel must be positive")
    strategy = Strategy(strategy)
    supply = NameSupply(names(p))
    report = RunReport(p, p, strategy)
    for kind in _KINDS[strategy]:
        report.counts[kind] = 0
    current = p
    for _ in range(fuel):
        try:
            s = step(current, strategy, supply)
        except ClosedStuck as stuck:
            report.stuck = stuck.variable
            break
        if s is None:
            break
        report.counts[s.kind] += 1
        if keep_trace:
            if len(report.steps) < TRACE_CAP:
                report.steps.append(s)
            else:
                report.trace_truncated = True
        current = s.after
    else:
        try:
            report.fuel_exhausted = find_redex(current, strategy) is not None
        except ClosedStuck as stuck:
            report.stuck = stuck.variable
    report.final = current
    return report
