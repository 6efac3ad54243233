"""Needed, applied, unapplied and useless variables.

Every function accepts a term, a program or a term context.  Sets are
returned as ``frozenset``; use :func:`sorted_names` for stable printing.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .syntax import Abs, App, Program, Term, Var

__all__ = [
    "nv", "anv", "unv", "useless", "upd", "program_sets", "prefix_sets",
    "sorted_names",
]

EMPTY: frozenset = frozenset()


def sorted_names(s) -> list:
    return sorted(s)


def upd(s: frozenset, x: str, y: str) -> frozenset:
    """Replace ``x`` by ``y`` in ``s`` when present."""
    if x not in s:
        return s
    return (s - {x}) | {y}


# ---------------------------------------------------------------------------
# terms

@lru_cache(maxsize=1 << 16)
def _nv_term(t: Term) -> frozenset:
    match t:
        case Var(name):
            return frozenset((name,))
        case Abs():
            return EMPTY
        case App(fun, arg):
            return _nv_term(fun) | _nv_term(arg)


@lru_cache(maxsize=1 << 16)
def _anv_term(t: Term) -> frozenset:
    match t:
        case Var() | Abs():
            return EMPTY
        case App(Var(name), arg):
            return frozenset((name,)) | _anv_term(arg)
        case App(fun, arg):
            return _anv_term(fun) | _anv_term(arg)


@lru_cache(maxsize=1 << 16)
def _unv_term(t: Term) -> frozenset:
    match t:
        case Var(name):
            return frozenset((name,))
        case Abs():
            return EMPTY
        case App(Var(), arg):
            return _unv_term(arg)
        case App(fun, arg):
            return _unv_term(fun) | _unv_term(arg)


# ---------------------------------------------------------------------------
# programs: one left-to-right fold carrying the three sets together

def prefix_sets(p: Program) -> Iterator[tuple]:
    """Yield ``(nv, anv, unv)`` of ``(head, env[:j])`` for j = 0 .. len(env)."""
    needed = _nv_term(p.head)
    applied = _anv_term(p.head)
    unapplied = _unv_term(p.head)
    yield needed, applied, unapplied
    for x, u in p.env:
        is_var = isinstance(u, Var)
        if x in needed:
            new_needed = (needed - {x}) | _nv_term(u)
            if x in applied and is_var:
                new_applied = (applied - {x}) | {u.name}
            else:
                new_applied = (applied - {x}) | _anv_term(u)
        else:
            new_needed, new_applied = needed, applied
        if x in unapplied or (x in needed and not is_var):
            new_unapplied = (unapplied - {x}) | _unv_term(u)
        else:
            new_unapplied = unapplied
        needed, applied, unapplied = new_needed, new_applied, new_unapplied
        yield needed, applied, unapplied


def program_sets(p: Program) -> tuple:
    """``(nv, anv, unv)`` of the whole program."""
    for sets in prefix_sets(p):
        pass
    return sets


# ---------------------------------------------------------------------------
# term contexts

def _ctx_sets(h) -> tuple:
    from .contexts import AppLeft, AppRight, Hole

    match h:
        case Hole():
            return EMPTY, EMPTY, EMPTY
        case AppLeft(inner, _):
            return _ctx_sets(inner)
        case AppRight(fun, inner):
            n, a, u = _ctx_sets(inner)
            # a variable left of the hole is applied, as it is for terms
            if isinstance(fun, Var):
                return n | {fun.name}, a | {fun.name}, u
            return (n | _nv_term(fun), a | _anv_term(fun), u | _unv_term(fun))
    raise TypeError(f"not a term context: {h!r}")


# ---------------------------------------------------------------------------
# public dispatch

def _dispatch(subject, index: int, term_fn) -> frozenset:
    if isinstance(subject, Term):
        return term_fn(subject)
    if isinstance(subject, Program):
        return program_sets(subject)[index]
    return _ctx_sets(subject)[index]


def nv(subject) -> frozenset:
    """Needed variables."""
    return _dispatch(subject, 0, _nv_term)


def anv(subject) -> frozenset:
    """Applied variables."""
    return _dispatch(subject, 1, _anv_term)


def unv(subject) -> frozenset:
    """Unapplied variables."""
    return _dispatch(subject, 2, _unv_term)


def useless(subject) -> frozenset:
    """Unapplied variables that are not also applied."""
    return unv(subject) - anv(subject)
