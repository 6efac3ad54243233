"""Term and program contexts, program plugging, and derivation checkers.

The checkers decide membership in the three families of evaluation
contexts (open, multiplicative, exponential) and in the hereditary head
contexts of the closed calculus.  They are declarative: a context is
accepted exactly when a derivation with the inference rules exists.  They
recurse on the environment from its outermost (rightmost) entry inwards.
When the hole sits in the outermost entry, the rule that plugged a variable
into a smaller context is inverted by trying every occurrence of the
entry's binder.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Union

from .classify import (is_applicative, is_closed_head_ctx, is_head_ctx,
                       is_nonvar_inert, is_inert)
from .syntax import Abs, App, Program, Term, Var
from .varsets import anv, nv, unv, upd

__all__ = [
    "Hole", "AppLeft", "AppRight", "TermCtx", "HeadCtx", "EnvCtx", "ProgCtx",
    "AmbiguousDerivation", "plug_term", "plug_prog", "append_es", "lookup",
    "dom", "ctx_from_path", "path_of", "term_positions", "occurrences",
    "derive_open", "derive_mult", "derive_exp", "derive_hhctx", "show_ctx",
]


@dataclass(frozen=True)
class Hole:
    pass


@dataclass(frozen=True)
class AppLeft:
    """``C t``: the hole is in function position."""
    ctx: "TermCtx"
    arg: Term


@dataclass(frozen=True)
class AppRight:
    """``t C``: the hole is in argument position."""
    fun: Term
    ctx: "TermCtx"


TermCtx = Union[Hole, AppLeft, AppRight]


@dataclass(frozen=True)
class HeadCtx:
    """``(C, env)``."""
    ctx: TermCtx
    env: tuple = ()


@dataclass(frozen=True)
class EnvCtx:
    """``(head, left [binder <- inner] right)``."""
    head: Term
    left: tuple
    binder: str
    inner: TermCtx
    right: tuple = ()


ProgCtx = Union[HeadCtx, EnvCtx]


class AmbiguousDerivation(RuntimeError):
    """Two distinct derivations gave different parameters for one context."""


# ---------------------------------------------------------------------------
# plugging

def plug_term(h: TermCtx, t: Term) -> Term:
    frames = []
    while not isinstance(h, Hole):
        frames.append(h)
        h = h.ctx
    for frame in reversed(frames):
        if isinstance(frame, AppLeft):
            t = App(t, frame.arg)
        else:
            t = App(frame.fun, t)
    return t


def plug_prog(p: ProgCtx, head: Term, new_env: tuple = ()) -> Program:
    """Plug the program ``(head, new_env)`` into ``p``.

    A head context puts ``new_env`` innermost; an environment context
    splices it right after the entry holding the hole.
    """
    new_env = tuple(new_env)
    if new_env:
        clash = {x for x, _ in new_env} & set(_binders(p))
        if clash:
            raise ValueError(f"binders {sorted(clash)} already bound")
    if isinstance(p, HeadCtx):
        return Program(plug_term(p.ctx, head), new_env + p.env)
    filled = ((p.binder, plug_term(p.inner, head)),)
    return Program(p.head, p.left + filled + new_env + p.right)


def _binders(subject) -> tuple:
    if isinstance(subject, Program):
        return subject.domain
    if isinstance(subject, HeadCtx):
        return tuple(x for x, _ in subject.env)
    return tuple(x for x, _ in subject.left + subject.right) + (subject.binder,)


def append_es(subject, x: str, u: Term):
    """Add ``[x <- u]`` as the outermost entry."""
    if x in _binders(subject):
        raise ValueError(f"binder {x!r} already bound")
    entry = ((x, u),)
    if isinstance(subject, Program):
        return Program(subject.head, subject.env + entry)
    if isinstance(subject, HeadCtx):
        return HeadCtx(subject.ctx, subject.env + entry)
    return EnvCtx(subject.head, subject.left, subject.binder, subject.inner,
                  subject.right + entry)


def _scope(subject) -> tuple:
    """Entries visible from the head, or from the hole of a context."""
    if isinstance(subject, tuple):
        return subject
    if isinstance(subject, Program) or isinstance(subject, HeadCtx):
        return subject.env
    return subject.right


def lookup(subject, x: str) -> Optional[Term]:
    """Content bound to ``x`` in scope, innermost binding first."""
    for name, content in _scope(subject):
        if name == x:
            return content
    return None


def dom(subject) -> frozenset:
    return frozenset(name for name, _ in _scope(subject))


# ---------------------------------------------------------------------------
# positions

def ctx_from_path(t: Term, path) -> tuple:
    """The context reached by following ``path`` (0 = function, 1 = argument)."""
    frames = []
    for step in path:
        if not isinstance(t, App):
            raise ValueError("path leaves the application spine")
        frames.append((step, t))
        t = t.fun if step == 0 else t.arg
    h: TermCtx = Hole()
    for step, node in reversed(frames):
        h = AppLeft(h, node.arg) if step == 0 else AppRight(node.fun, h)
    return h, t


def path_of(h: TermCtx) -> tuple:
    path = []
    while not isinstance(h, Hole):
        path.append(0 if isinstance(h, AppLeft) else 1)
        h = h.ctx
    return tuple(path)


def term_positions(t: Term) -> Iterator[tuple]:
    """Every ``(C, s)`` with ``C<s> = t``; positions under abstractions excluded."""
    stack = [(t, ())]
    while stack:
        node, path = stack.pop()
        yield ctx_from_path(t, path)
        if isinstance(node, App):
            stack.append((node.arg, path + (1,)))
            stack.append((node.fun, path + (0,)))


def occurrences(head: Term, env: tuple, x: str) -> Iterator[ProgCtx]:
    """Contexts ``P`` with ``P<x> = (head, env)``."""
    for ctx, sub in term_positions(head):
        if isinstance(sub, Var) and sub.name == x:
            yield HeadCtx(ctx, env)
    for j, (binder, content) in enumerate(env):
        for ctx, sub in term_positions(content):
            if isinstance(sub, Var) and sub.name == x:
                yield EnvCtx(head, env[:j], binder, ctx, env[j + 1:])


def _peel(p: ProgCtx):
    """Split off the outermost entry when it does not hold the hole."""
    if isinstance(p, HeadCtx):
        if not p.env:
            return None
        return HeadCtx(p.ctx, p.env[:-1]), p.env[-1]
    if not p.right:
        return None
    return EnvCtx(p.head, p.left, p.binder, p.inner, p.right[:-1]), p.right[-1]


def _unique(results: set, rule: str):
    if len(results) > 1:
        raise AmbiguousDerivation(f"rule {rule}: {sorted(map(str, results))}")
    return next(iter(results)) if results else None


# ---------------------------------------------------------------------------
# open evaluation contexts

@lru_cache(maxsize=1 << 15)
def derive_open(p: ProgCtx) -> Optional[frozenset]:
    """The needed variables V with ``p`` an open evaluation context, or None."""
    peeled = _peel(p)
    if peeled is not None:
        inner, (x, t) = peeled
        needed = derive_open(inner)
        if needed is None:
            return None
        if x not in needed:
            return needed
        if is_inert(t):
            return (needed - {x}) | nv(t)
        return None
    if isinstance(p, HeadCtx):
        return nv(p.ctx) if is_head_ctx(p.ctx) else None
    if not is_head_ctx(p.inner):
        return None
    results = set()
    for q in occurrences(p.head, p.left, p.binder):
        needed = derive_open(q)
        if needed is not None and p.binder not in needed:
            results.add(needed | nv(p.inner))
    return _unique(results, "open-hereditary")


# ---------------------------------------------------------------------------
# multiplicative evaluation contexts

def _extend_useful(sets, x: str, t: Term):
    """Shared rules for appending ``[x <- t]`` outside the hole."""
    unapplied, applied = sets[0], sets[1]
    if x not in unapplied and x not in applied:
        return sets
    if isinstance(t, Var):
        return (upd(unapplied, x, t.name), upd(applied, x, t.name)) + sets[2:]
    if is_nonvar_inert(t):
        return ((unapplied - {x}) | unv(t), (applied - {x}) | anv(t)) + sets[2:]
    if isinstance(t, Abs) and x in unapplied and x not in applied:
        return (unapplied - {x}, applied) + sets[2:]
    return None


@lru_cache(maxsize=1 << 15)
def derive_mult(p: ProgCtx) -> Optional[tuple]:
    """``(U, A)`` with ``p`` a multiplicative evaluation context, or None."""
    peeled = _peel(p)
    if peeled is not None:
        inner, (x, t) = peeled
        sets = derive_mult(inner)
        return None if sets is None else _extend_useful(sets, x, t)
    if isinstance(p, HeadCtx):
        return (unv(p.ctx), anv(p.ctx)) if is_head_ctx(p.ctx) else None
    if not is_head_ctx(p.inner):
        return None
    results = set()
    for q in occurrences(p.head, p.left, p.binder):
        sets = derive_mult(q)
        if sets is not None and p.binder not in sets[0] | sets[1]:
            results.add((sets[0] | unv(p.inner), sets[1] | anv(p.inner)))
    return _unique(results, "mult-hereditary")


# ---------------------------------------------------------------------------
# exponential evaluation contexts

@lru_cache(maxsize=1 << 15)
def derive_exp(p: ProgCtx) -> Optional[tuple]:
    """``(U, A, k)`` with ``p`` an exponential evaluation context, or None.

    ``k`` counts the uses of the rule that jumps through a variable-to-
    variable entry in applied position.
    """
    peeled = _peel(p)
    if peeled is not None:
        inner, (x, t) = peeled
        sets = derive_exp(inner)
        return None if sets is None else _extend_useful(sets, x, t)
    if isinstance(p, HeadCtx):
        if is_applicative(p.ctx):
            return unv(p.ctx), anv(p.ctx), 0
        return None
    x = p.binder
    results = set()
    if is_applicative(p.inner):
        for q in occurrences(p.head, p.left, x):
            sets = derive_mult(q)
            if sets is not None and x not in sets[0] | sets[1]:
                results.add(((sets[0] - {x}) | unv(p.inner),
                             sets[1] | anv(p.inner), 0))
        return _unique(results, "exp-base")
    if isinstance(p.inner, Hole):
        for q in occurrences(p.head, p.left, x):
            sets = derive_exp(q)
            if sets is not None and x not in sets[1]:
                results.add((sets[0] - {x}, sets[1], sets[2] + 1))
        return _unique(results, "exp-jump")
    return None


# ---------------------------------------------------------------------------
# hereditary head contexts of the closed calculus

@lru_cache(maxsize=1 << 15)
def derive_hhctx(p: ProgCtx) -> bool:
    if isinstance(p, HeadCtx):
        return is_closed_head_ctx(p.ctx)
    if not is_closed_head_ctx(p.inner):
        return False
    return any(derive_hhctx(q) for q in occurrences(p.head, p.left, p.binder))


# ---------------------------------------------------------------------------
# printing

def _show_ctx_term(h: TermCtx) -> str:
    from .syntax import show

    # the printer emits variable names verbatim, so the marker survives
    return show(plug_term(h, Var("<.>")))


def show_ctx(p) -> str:
    """Render a context with ``<.>`` for the hole."""
    from .syntax import show

    if isinstance(p, (Hole, AppLeft, AppRight)):
        return _show_ctx_term(p)
    if isinstance(p, HeadCtx):
        body = _show_ctx_term(p.ctx)
        env = p.env
        return body + "".join(f" [{x} <- {show(t)}]" for x, t in env)
    text = show(Program(p.head, p.left))
    text += f" [{p.binder} <- {_show_ctx_term(p.inner)}]"
    return text + "".join(f" [{x} <- {show(t)}]" for x, t in p.right)
