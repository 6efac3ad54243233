"""Brute-force reference procedures.

Nothing here is clever: decompositions are enumerated exhaustively and
filtered through the declarative context checkers, and beta reduction is
plain normal-order rewriting with meta-level substitution.  These are the
yardsticks the steppers are measured against.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional

from .classify import is_applicative
from .contexts import (AppLeft, AppRight, EnvCtx, HeadCtx, Hole, derive_exp,
                       derive_mult, derive_open, dom, lookup, occurrences,
                       term_positions)
from .syntax import Abs, App, NameSupply, Program, Term, Var, names, size, subst
from .varsets import anv, nv, unv

__all__ = [
    "Calculus", "Category", "ReductionPlace", "OracleBoundExceeded",
    "enumerate_decompositions", "judge", "reduction_places",
    "unique_decomposition_violations", "oracle_redex", "focus_on_variable",
    "FocusMode", "ExpForm", "classify_exp_form", "ref_beta_normalize",
    "DEFAULT_MAX_SIZE", "DEFAULT_MAX_DECOMPOSITIONS", "LITERAL_COUNTEREXAMPLES",
]

DEFAULT_MAX_SIZE = 200
DEFAULT_MAX_DECOMPOSITIONS = 10_000

# programs with two useful places under the literal side conditions:
# the free c after the inert b competes with the place to its right
LITERAL_COUNTEREXAMPLES = (
    r"b c ((\p.p) (\q.q)) (\r.c)",  # with a beta redex
    r"b c (a y)",                      # with an applied variable
    r"b c (x y) [x <- \p.p]",         # with an exponential redex
)


class Calculus(str, Enum):
    OPEN = "open"
    USEFUL = "useful"


class Category(str, Enum):
    MULT_REDEX = "MultRedex"
    EXP_REDEX = "ExpRedex"
    NEW_NEEDED_VAR = "NewNeededVar"
    NEW_HEREDITARY_JUMP = "NewHereditaryJump"
    NEW_APPLIED_VAR = "NewAppliedVar"

    def __str__(self) -> str:
        return self.value

    @property
    def is_redex(self) -> bool:
        return self in (Category.MULT_REDEX, Category.EXP_REDEX)


@dataclass(frozen=True)
class ReductionPlace:
    ctx: object
    focus: Term
    category: Category
    # the parameter set the place requires S to contain
    required: frozenset


class OracleBoundExceeded(ValueError):
    pass


def _max_size() -> int:
    return int(os.environ.get("CBNEED_ORACLE_MAX_SIZE", DEFAULT_MAX_SIZE))


def enumerate_decompositions(p: Program, max_size: int | None = None) -> list:
    """All ``(P, t)`` with ``P<t> = p``, head and environment positions."""
    bound = _max_size() if max_size is None else max_size
    if size(p) > bound:
        raise OracleBoundExceeded(f"program has {size(p)} nodes, bound {bound}")
    out = [(HeadCtx(ctx, p.env), sub) for ctx, sub in term_positions(p.head)]
    for j, (x, content) in enumerate(p.env):
        for ctx, sub in term_positions(content):
            out.append((EnvCtx(p.head, p.env[:j], x, ctx, p.env[j + 1:]), sub))
    if len(out) > DEFAULT_MAX_DECOMPOSITIONS:
        raise OracleBoundExceeded(f"{len(out)} decompositions")
    return out


def judge(ctx, calculus: Calculus) -> dict:
    """The judgments a context admits: keys ``open``, ``mult``, ``exp``."""
    if Calculus(calculus) is Calculus.OPEN:
        needed = derive_open(ctx)
        return {} if needed is None else {"open": needed}
    out = {}
    mult = derive_mult(ctx)
    if mult is not None:
        out["mult"] = mult
    exp = derive_exp(ctx)
    if exp is not None:
        out["exp"] = exp
    return out


def _is_beta(t: Term) -> bool:
    return isinstance(t, App) and isinstance(t.fun, Abs)


def _candidate_places(p: Program, calculus: Calculus,
                      literal: bool = False) -> list:
    """Places together with the set S must contain for them to count.

    Every useful place requires ``S`` to contain both ``U`` and ``A`` of its
    judgment.  With ``literal`` set, redexes require nothing and new applied
    variables only ``A``; under that reading two places can coexist (see
    :data:`LITERAL_COUNTEREXAMPLES`).
    """
    out = []
    for ctx, t in enumerate_decompositions(p):
        judgments = judge(ctx, calculus)
        if not judgments:
            continue
        bound_here = isinstance(t, Var) and t.name in dom(ctx)
        value_here = bound_here and isinstance(lookup(ctx, t.name), Abs)
        if calculus is Calculus.OPEN:
            needed = judgments["open"]
            if _is_beta(t):
                out.append(ReductionPlace(ctx, t, Category.MULT_REDEX, needed))
            elif value_here:
                out.append(ReductionPlace(ctx, t, Category.EXP_REDEX, needed))
            elif isinstance(t, Var) and not bound_here:
                out.append(ReductionPlace(ctx, t, Category.NEW_NEEDED_VAR, needed))
            continue
        mult, exp = judgments.get("mult"), judgments.get("exp")

        def needs(sets, literal_need):
            return literal_need if literal else sets[0] | sets[1]

        if mult is not None and _is_beta(t):
            out.append(ReductionPlace(ctx, t, Category.MULT_REDEX,
                                      needs(mult, frozenset())))
        if exp is not None and value_here:
            out.append(ReductionPlace(ctx, t, Category.EXP_REDEX,
                                      needs(exp, frozenset())))
        if isinstance(t, Var) and not bound_here:
            if mult is not None:
                out.append(ReductionPlace(ctx, t, Category.NEW_HEREDITARY_JUMP,
                                          mult[0] | mult[1]))
            if exp is not None:
                out.append(ReductionPlace(ctx, t, Category.NEW_APPLIED_VAR,
                                          needs(exp, exp[1])))
    return out


def _holds(place: ReductionPlace, s: frozenset) -> bool:
    if not place.required <= s:
        return False
    if place.category in (Category.NEW_NEEDED_VAR, Category.NEW_HEREDITARY_JUMP,
                          Category.NEW_APPLIED_VAR):
        return place.focus.name not in s
    return True


def reduction_places(p: Program, s, calculus: Calculus,
                     literal: bool = False) -> list:
    """The S-reduction places of ``p``."""
    s = frozenset(s)
    return [pl for pl in _candidate_places(p, Calculus(calculus), literal)
            if _holds(pl, s)]


def _lemma_set(place: ReductionPlace, calculus: Calculus):
    """The parameter set the unique-decomposition statement unions over."""
    judgments = judge(place.ctx, calculus)
    if calculus is Calculus.OPEN:
        return judgments["open"]
    return frozenset().union(*(judgments[k][1] for k in ("mult", "exp")
                               if k in judgments))


def unique_decomposition_violations(p: Program, calculus: Calculus,
                                    literal: bool = False) -> list:
    """Pairs of distinct places that are both S-places for the lemma's S."""
    calculus = Calculus(calculus)
    places = _candidate_places(p, calculus, literal)
    bad = []
    for a, b in combinations(places, 2):
        if a.ctx == b.ctx and a.focus == b.focus:
            continue
        s = (_lemma_set(a, calculus) | _lemma_set(b, calculus)
             | a.required | b.required)
        if _holds(a, s) and _holds(b, s):
            bad.append((a, b))
    return bad


def oracle_redex(p: Program, calculus: Calculus) -> list:
    """Redex places, with S the union of every parameter set in sight."""
    calculus = Calculus(calculus)
    places = _candidate_places(p, calculus)
    s = frozenset().union(*(pl.required for pl in places))
    return [pl for pl in places if pl.category.is_redex and _holds(pl, s)]


# ---------------------------------------------------------------------------
# focusing

class FocusMode(str, Enum):
    NEEDED = "needed"
    UNAPPLIED = "unapplied"
    APPLIED = "applied"


def focus_on_variable(p: Program, x: str, mode: FocusMode):
    """A context ``P`` with ``P<x> = p`` whose parameters exclude ``x``."""
    mode = FocusMode(mode)
    source = {FocusMode.NEEDED: nv, FocusMode.UNAPPLIED: unv,
              FocusMode.APPLIED: anv}[mode]
    if x not in source(p):
        raise ValueError(f"{x!r} is not a {mode.value} variable")
    for ctx, t in enumerate_decompositions(p):
        if not (isinstance(t, Var) and t.name == x) or x in dom(ctx):
            continue
        if mode is FocusMode.NEEDED:
            sets = derive_open(ctx)
            if sets is not None and x not in sets:
                return ctx
        elif mode is FocusMode.UNAPPLIED:
            sets = derive_mult(ctx)
            if sets is not None and x not in sets[0]:
                return ctx
        else:
            sets = derive_exp(ctx)
            if sets is not None and x not in sets[1]:
                return ctx
    return None


# ---------------------------------------------------------------------------
# shapes of exponential contexts

class ExpForm(str, Enum):
    HEAD = "Form1"
    ENTRY = "Form2"
    JUMP = "Form3"

    def __str__(self) -> str:
        return self.value


def _strip_applied_hole(h):
    """``J`` with ``h = J<<.> u>``."""
    match h:
        case AppLeft(Hole(), _):
            return Hole()
        case AppLeft(inner, arg):
            return AppLeft(_strip_applied_hole(inner), arg)
        case AppRight(fun, inner):
            return AppRight(fun, _strip_applied_hole(inner))
    raise ValueError("not an applicative context")


def classify_exp_form(ctx) -> ExpForm:
    """Which of the three shapes an exponential context has.

    Each shape's accompanying facts are checked and a violation raises
    ``AssertionError``.
    """
    judgment = derive_exp(ctx)
    if judgment is None:
        raise ValueError("not an exponential evaluation context")
    unapplied, applied, k = judgment
    if isinstance(ctx, HeadCtx):
        assert is_applicative(ctx.ctx)
        q = HeadCtx(_strip_applied_hole(ctx.ctx), ctx.env)
        assert derive_mult(q) == (unapplied, applied), "form 1 companion"
        assert k == 0, "form 1 has no jumps"
        return ExpForm.HEAD
    if is_applicative(ctx.inner):
        q = EnvCtx(ctx.head, ctx.left, ctx.binder,
                   _strip_applied_hole(ctx.inner), ctx.right)
        assert derive_mult(q) == (unapplied, applied), "form 2 companion"
        assert k == 0, "form 2 has no jumps"
        return ExpForm.ENTRY
    assert isinstance(ctx.inner, Hole)
    candidates = [q for q in occurrences(ctx.head, ctx.left, ctx.binder)
                  if derive_exp(q) is not None]
    assert candidates, "form 3 needs an inner exponential context"
    z = ctx.binder
    used = names(Program(ctx.head, ctx.left + ctx.right)) | {z}
    fresh = NameSupply(used).fresh("w")
    value = Abs(fresh, Var(fresh))
    matched = False
    for q in candidates:
        inner_k = derive_exp(q)[2]
        if inner_k + 1 != k:
            continue
        r = q
        for entry in ((z, value),) + ctx.right:
            r = _append(r, entry)
        r_judgment = derive_exp(r)
        if r_judgment is not None and r_judgment[:2] == (unapplied, applied) \
                and r_judgment[2] + 1 == k:
            matched = True
            break
    assert matched, "form 3 companion"
    return ExpForm.JUMP


def _append(ctx, entry):
    if isinstance(ctx, HeadCtx):
        return HeadCtx(ctx.ctx, ctx.env + (entry,))
    return EnvCtx(ctx.head, ctx.left, ctx.binder, ctx.inner, ctx.right + (entry,))


# ---------------------------------------------------------------------------
# reference beta reduction

def ref_beta_normalize(t: Term, fuel: int = 10_000) -> Optional[tuple]:
    """Normal-order strong beta reduction.

    Returns ``(normal form, steps)`` or None when ``fuel`` runs out.
    """
    # keyed by id, holding the node so the id cannot be recycled
    normal: dict = {}
    supply = NameSupply(names(t))
    for steps in range(fuel + 1):
        reduced = _leftmost_outermost(t, normal, supply)
        if reduced is None:
            return t, steps
        t = reduced
    return None


def _leftmost_outermost(t: Term, normal: dict, supply: NameSupply):
    key = id(t)
    if key in normal:
        return None
    match t:
        case App(Abs(var, body), arg):
            return subst(body, var, arg, supply)
        case App(fun, arg):
            new = _leftmost_outermost(fun, normal, supply)
            if new is not None:
                return App(new, arg)
            new = _leftmost_outermost(arg, normal, supply)
            if new is not None:
                return App(fun, new)
        case Abs(var, body):
            new = _leftmost_outermost(body, normal, supply)
            if new is not None:
                return Abs(var, new)
    normal[key] = t
    return None
