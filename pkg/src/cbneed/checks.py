"""Invariant suites over a corpus of programs.

Each suite returns a :class:`SuiteResult` counting the instances it checked
and recording the failures.  The command-line oracle and the test-suite both
run these.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .classify import TermClass, classify_term, is_fireball
from .contexts import (HeadCtx, derive_exp, derive_hhctx, derive_mult,
                       derive_open, plug_prog, show_ctx)
from .engines import Strategy, find_redex, run
from .normalforms import (GenVar, NotNormal, OpenNormalClass, UfAbs, UfInert,
                          onorm, unfold, useful_classes)
from .oracle import (Calculus, FocusMode, classify_exp_form, enumerate_decompositions,
                     focus_on_variable, oracle_redex, ref_beta_normalize,
                     unique_decomposition_violations)
from .syntax import Abs, App, Program, Term, Var, alpha_eq, show, subterms
from .varsets import anv, nv, prefix_sets, unv, useless

__all__ = [
    "SuiteResult", "Workbench", "SUITES", "run_suites", "shape_key",
]

REDUCT_FUEL = 200
MAX_FAILURES = 5


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(message)
        else:
            self.failures.append("...")
            del self.failures[MAX_FAILURES + 1:]

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: {self.checked} checked"
        if self.note:
            text += f" ({self.note})"
        if self.failures:
            text += "\n    first counterexample: " + self.failures[0]
        return text


class Workbench:
    """A corpus with its runs computed once and shared between suites."""

    def __init__(self, programs: Iterable[Program], fuel: int = REDUCT_FUEL):
        self.programs = list(programs)
        self.fuel = fuel
        self._runs: dict = {}

    def runs(self, strategy: Strategy) -> list:
        strategy = Strategy(strategy)
        if strategy not in self._runs:
            self._runs[strategy] = [run(p, strategy, self.fuel)
                                    for p in self.programs]
        return self._runs[strategy]

    def reducts(self, strategy: Strategy) -> list:
        out = []
        for report in self.runs(strategy):
            out.extend(s.after for s in report.steps)
        return out

    def all_programs(self) -> list:
        seen = set()
        out = []
        for p in [*self.programs, *self.reducts(Strategy.OPEN),
                  *self.reducts(Strategy.USEFUL)]:
            if p not in seen:
                seen.add(p)
                out.append(p)
        return out


# ---------------------------------------------------------------------------
# determinism

def _same_place(place, ctx, redex_focus) -> bool:
    return place.ctx == ctx and place.focus == redex_focus


def check_determinism(bench: Workbench) -> SuiteResult:
    result = SuiteResult("determinism")
    for p in bench.programs:
        for calculus, strategy in ((Calculus.OPEN, Strategy.OPEN),
                                   (Calculus.USEFUL, Strategy.USEFUL)):
            result.checked += 1
            places = oracle_redex(p, calculus)
            redex = find_redex(p, strategy)
            if len(places) > 1:
                result.fail(f"{calculus.value}: {len(places)} redex places in {show(p)}")
                continue
            if redex is None:
                if places:
                    result.fail(f"{calculus.value}: stepper normal but oracle "
                                f"finds {show_ctx(places[0].ctx)} in {show(p)}")
                continue
            ctx, focus = redex.context(p), redex.focus(p)
            if not places or not _same_place(places[0], ctx, focus):
                result.fail(f"{calculus.value}: stepper fires at {show_ctx(ctx)} "
                            f"but oracle says {[show_ctx(x.ctx) for x in places]}"
                            f" in {show(p)}")
                continue
            bad = unique_decomposition_violations(p, calculus)
            if bad:
                a, b = bad[0]
                result.fail(f"{calculus.value}: two places {show_ctx(a.ctx)} "
                            f"and {show_ctx(b.ctx)} in {show(p)}")
    return result


def check_judgments(bench: Workbench) -> SuiteResult:
    """The stepper's context is accepted by the matching checker."""
    result = SuiteResult("judgments")
    for strategy in Strategy:
        for report in bench.runs(strategy):
            for s in report.steps:
                result.checked += 1
                ctx = s.context
                if strategy is Strategy.CLOSED:
                    ok = derive_hhctx(ctx)
                elif strategy is Strategy.OPEN:
                    ok = derive_open(ctx) is not None
                elif s.kind.multiplicative:
                    ok = derive_mult(ctx) is not None
                else:
                    judgment = derive_exp(ctx)
                    ok = judgment is not None and judgment[2] == s.na_count
                if not ok:
                    result.fail(f"{s.kind} at {show_ctx(ctx)} not derivable")
    return result


# ---------------------------------------------------------------------------
# normal forms

def check_characterization(bench: Workbench) -> SuiteResult:
    result = SuiteResult("characterization")
    for p in bench.all_programs():
        result.checked += 1
        open_normal = find_redex(p, Strategy.OPEN) is None
        if open_normal != (onorm(p) is not OpenNormalClass.NOT_NORMAL):
            result.fail(f"open: stepper normal={open_normal}, onorm={onorm(p)} "
                        f"on {show(p)}")
        useful_normal = find_redex(p, Strategy.USEFUL) is None
        classes = useful_classes(p)
        if useful_normal != bool(classes):
            result.fail(f"useful: stepper normal={useful_normal}, "
                        f"classes={classes} on {show(p)}")
    return result


def _normal_forms(bench: Workbench) -> list:
    out = [p for p in bench.all_programs() if find_redex(p, Strategy.USEFUL) is None]
    return out


def check_disjointness(bench: Workbench) -> SuiteResult:
    result = SuiteResult("disjointness")
    for p in _normal_forms(bench):
        result.checked += 1
        classes = useful_classes(p)
        if len(classes) != 1:
            result.fail(f"classes {classes} on {show(p)}")
            continue
        cls = classes[0]
        needed, applied, unapplied = nv(p), anv(p), unv(p)
        t = unfold(p)
        if isinstance(cls, GenVar):
            ok = (t == Var(cls.head) and needed == unapplied == {cls.head}
                  and not applied)
        elif cls is UfAbs:
            ok = isinstance(t, Abs) and not (needed or applied or unapplied)
        else:
            ok = (classify_term(t) is TermClass.NON_VAR_INERT
                  and applied == anv(t) and unapplied == unv(t) and applied)
        if not ok:
            result.fail(f"{cls} properties fail on {show(p)} unfolding to {show(t)}")
        if not is_fireball(t):
            result.fail(f"unfolding of normal {show(p)} is not a fireball")
    return result


def check_es_properties(bench: Workbench) -> SuiteResult:
    """Dropping the outermost entry of a normal program keeps it normal."""
    result = SuiteResult("es-removal")
    for p in bench.all_programs():
        if not p.env:
            continue
        shorter = Program(p.head, p.env[:-1])
        for strategy in (Strategy.OPEN, Strategy.USEFUL):
            if find_redex(p, strategy) is None:
                result.checked += 1
                if find_redex(shorter, strategy) is not None:
                    result.fail(f"{strategy.value}: {show(shorter)} not normal "
                                f"although {show(p)} is")
    return result


# ---------------------------------------------------------------------------
# variables

def _term_contexts(p: Program):
    for ctx, _ in enumerate_decompositions(p):
        yield ctx.ctx if isinstance(ctx, HeadCtx) else ctx.inner


def _cover(subject) -> Optional[str]:
    needed, applied, unapplied = nv(subject), anv(subject), unv(subject)
    if needed != unapplied | applied:
        return f"nv={sorted(needed)} unv={sorted(unapplied)} anv={sorted(applied)}"
    if useless(subject) & applied:
        return "useless meets applied"
    return None


def check_coverage(bench: Workbench) -> SuiteResult:
    result = SuiteResult("coverage")
    seen: set = set()
    for p in bench.all_programs():
        subjects = [p]
        if p in bench.programs:
            for t in (p.head, *(c for _, c in p.env)):
                subjects.extend(subterms(t))
            subjects.extend(_term_contexts(p))
        for subject in subjects:
            if subject in seen:
                continue
            seen.add(subject)
            result.checked += 1
            problem = _cover(subject)
            if problem:
                result.fail(f"{problem} on {_show_any(subject)}")
    return result


def _show_any(subject) -> str:
    if isinstance(subject, (Program, Term)):
        return show(subject)
    return show_ctx(subject)


# ---------------------------------------------------------------------------
# contexts

def _harvest_contexts(bench: Workbench):
    seen = set()
    for strategy in (Strategy.OPEN, Strategy.USEFUL):
        for report in bench.runs(strategy):
            for s in report.steps:
                if s.context not in seen:
                    seen.add(s.context)
                    yield s.context
    for p in bench.programs:
        for ctx, _ in enumerate_decompositions(p):
            if ctx not in seen:
                seen.add(ctx)
                yield ctx


def check_exp_in_mult(bench: Workbench) -> SuiteResult:
    result = SuiteResult("exp-in-mult")
    for ctx in _harvest_contexts(bench):
        exp = derive_exp(ctx)
        if exp is None:
            continue
        result.checked += 1
        mult = derive_mult(ctx)
        if mult is None or not (mult[0] <= exp[0] and mult[1] <= exp[1]):
            result.fail(f"{show_ctx(ctx)}: exp {exp} mult {mult}")
    return result


def check_exp_forms(bench: Workbench) -> SuiteResult:
    result = SuiteResult("exp-forms")
    for ctx in _harvest_contexts(bench):
        if derive_exp(ctx) is None:
            continue
        result.checked += 1
        try:
            classify_exp_form(ctx)
        except AssertionError as err:
            result.fail(f"{show_ctx(ctx)}: {err}")
    return result


def check_needed_production(bench: Workbench) -> SuiteResult:
    """Plugging a fresh variable into a context makes it needed or applied."""
    result = SuiteResult("variable-production")
    probe = "fresh_probe"
    for ctx in _harvest_contexts(bench):
        plugged = None
        for derive, source in ((derive_open, nv), (derive_mult, nv),
                               (derive_exp, anv)):
            if derive(ctx) is None:
                continue
            plugged = plugged or plug_prog(ctx, Var(probe))
            result.checked += 1
            if probe not in source(plugged):
                result.fail(f"{derive.__name__} {show_ctx(ctx)}: {probe} not in "
                            f"{source.__name__}")
    return result


# ---------------------------------------------------------------------------
# usefulness

def check_usefulness(bench: Workbench) -> SuiteResult:
    result = SuiteResult("usefulness")
    inconclusive = 0
    for report in bench.runs(Strategy.USEFUL):
        steps = report.steps
        for i, s in enumerate(steps):
            if s.kind.multiplicative:
                continue
            k = s.na_count
            tail = steps[i + 1:i + k + 2]
            if len(tail) < k + 1 and report.fuel_exhausted:
                # the run stopped early; continue it just far enough
                more = run(report.final, Strategy.USEFUL, k + 1 - len(tail))
                tail = tail + more.steps
            if len(tail) < k + 1:
                inconclusive += 1
                continue
            result.checked += 1
            kinds = [str(t.kind) for t in tail]
            if kinds != ["ue"] * k + ["um"]:
                result.fail(f"k={k} but continuation {kinds} from {show(s.before)}")
                continue
            sets = derive_exp(s.context)[:2]
            for t in tail[:-1]:
                if derive_exp(t.context)[:2] != sets:
                    result.fail(f"continuation context {show_ctx(t.context)} "
                                f"leaves the parameters {sets}")
            if derive_mult(tail[-1].context) != sets:
                result.fail(f"closing multiplicative context "
                            f"{show_ctx(tail[-1].context)} leaves {sets}")
    result.note = f"{inconclusive} cut off by fuel"
    return result


# ---------------------------------------------------------------------------
# subterm property

def shape_key(t: Term) -> tuple:
    """Structure with every name replaced by its first-occurrence index."""
    table: dict = {}

    def idx(name: str) -> int:
        return table.setdefault(name, len(table))

    out: list = []
    stack = [t]
    while stack:
        node = stack.pop()
        match node:
            case Var(name):
                out.append(("v", idx(name)))
            case Abs(var, body):
                out.append(("l", idx(var)))
                stack.append(body)
            case App(fun, arg):
                out.append(("a",))
                stack.append(arg)
                stack.append(fun)
    return tuple(out)


def check_subterm(bench: Workbench) -> SuiteResult:
    result = SuiteResult("subterm")
    for strategy in Strategy:
        for report in bench.runs(strategy):
            keys = None
            for s in report.steps:
                if s.value is None:
                    continue
                if keys is None:
                    p = report.initial
                    keys = {shape_key(t) for root in (p.head, *(c for _, c in p.env))
                            for t in subterms(root)}
                result.checked += 1
                if shape_key(s.value) not in keys:
                    result.fail(f"{show(s.value)} is not a subterm of "
                                f"{show(report.initial)}")
    return result


# ---------------------------------------------------------------------------
# focusing on normal forms

def check_focusing(bench: Workbench) -> SuiteResult:
    result = SuiteResult("focusing")
    for p in bench.all_programs():
        if find_redex(p, Strategy.OPEN) is None:
            needed = nv(p)
            for x in sorted(needed):
                result.checked += 1
                ctx = focus_on_variable(p, x, FocusMode.NEEDED)
                if ctx is None or not derive_open(ctx) < needed:
                    result.fail(f"no needed focus on {x} in {show(p)}")
        if find_redex(p, Strategy.USEFUL) is None:
            applied, unapplied = anv(p), unv(p)
            for x in sorted(unapplied):
                result.checked += 1
                ctx = focus_on_variable(p, x, FocusMode.UNAPPLIED)
                sets = ctx and derive_mult(ctx)
                if not sets or not (sets[0] < unapplied and sets[1] <= applied):
                    result.fail(f"no unapplied focus on {x} in {show(p)}")
            for x in sorted(applied):
                result.checked += 1
                ctx = focus_on_variable(p, x, FocusMode.APPLIED)
                sets = ctx and derive_exp(ctx)
                if not sets or not (sets[0] <= unapplied and sets[1] < applied):
                    result.fail(f"no applied focus on {x} in {show(p)}")
    return result


# ---------------------------------------------------------------------------
# semantics of sharing

def check_unfolding_semantics(bench: Workbench, fuel: int = 200,
                              max_size: int = 400) -> SuiteResult:
    """A step does not change the beta normal form of the unfolding."""
    result = SuiteResult("unfolding-semantics")
    skipped = 0
    for strategy in (Strategy.OPEN, Strategy.USEFUL):
        for report in bench.runs(strategy):
            for s in report.steps[:20]:
                try:
                    before = unfold(s.before, max_size)
                    after = unfold(s.after, max_size)
                except Exception:
                    skipped += 1
                    continue
                a = ref_beta_normalize(before, fuel)
                b = ref_beta_normalize(after, fuel)
                if a is None or b is None:
                    skipped += 1
                    continue
                result.checked += 1
                if not alpha_eq(a[0], b[0]):
                    result.fail(f"{s.kind} changes the unfolded normal form: "
                                f"{show(s.before)} -> {show(s.after)}")
    result.note = f"{skipped} skipped (large or divergent)"
    return result


SUITES: dict = {
    "determinism": check_determinism,
    "judgments": check_judgments,
    "characterization": check_characterization,
    "coverage": check_coverage,
    "exp-in-mult": check_exp_in_mult,
    "exp-forms": check_exp_forms,
    "variable-production": check_needed_production,
    "usefulness": check_usefulness,
    "disjointness": check_disjointness,
    "es-removal": check_es_properties,
    "subterm": check_subterm,
    "focusing": check_focusing,
    "unfolding-semantics": check_unfolding_semantics,
}


def run_suites(bench: Workbench, names: Iterable[str] | None = None) -> list:
    chosen = list(SUITES) if names is None else list(names)
    return [SUITES[name](bench) for name in chosen]
