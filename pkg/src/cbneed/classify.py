"""Values, inert terms, fireballs, and the redex of a non-normal term."""

from __future__ import annotations

from enum import Enum
from functools import lru_cache

from .syntax import Abs, App, Term, Var

__all__ = [
    "TermClass", "classify_term", "is_value", "is_inert", "is_fireball",
    "is_nonvar_inert", "is_applicative", "is_head_ctx", "is_closed_head_ctx",
    "find_term_redex",
]


class TermClass(str, Enum):
    VALUE = "Value"
    VAR_INERT = "VarInert"
    NON_VAR_INERT = "NonVarInert"
    NON_NORMAL = "NonNormal"

    def __str__(self) -> str:
        return self.value


@lru_cache(maxsize=1 << 16)
def classify_term(t: Term) -> TermClass:
    match t:
        case Abs():
            return TermClass.VALUE
        case Var():
            return TermClass.VAR_INERT
        case App(fun, arg):
            if (is_inert(fun)
                    and classify_term(arg) is not TermClass.NON_NORMAL):
                return TermClass.NON_VAR_INERT
            return TermClass.NON_NORMAL


def is_value(t: Term) -> bool:
    return isinstance(t, Abs)


def is_inert(t: Term) -> bool:
    return classify_term(t) in (TermClass.VAR_INERT, TermClass.NON_VAR_INERT)


def is_nonvar_inert(t: Term) -> bool:
    return classify_term(t) is TermClass.NON_VAR_INERT


def is_fireball(t: Term) -> bool:
    return classify_term(t) is not TermClass.NON_NORMAL


def is_head_ctx(h) -> bool:
    """Term contexts of the open grammar: hole, ``H t``, ``i H``."""
    from .contexts import AppLeft, AppRight, Hole

    while True:
        match h:
            case Hole():
                return True
            case AppLeft(inner, _):
                h = inner
            case AppRight(fun, inner):
                if not is_inert(fun):
                    return False
                h = inner
            case _:
                return False


def is_closed_head_ctx(h) -> bool:
    """Head contexts of the closed calculus: hole or ``H t``."""
    from .contexts import AppLeft, Hole

    while isinstance(h, AppLeft):
        h = h.ctx
    return isinstance(h, Hole)


def is_applicative(h) -> bool:
    """Applicative term contexts: ``<.> t``, ``H@ t``, ``i H@``."""
    from .contexts import AppLeft, AppRight, Hole

    match h:
        case AppLeft(Hole(), _):
            return True
        case AppLeft(inner, _):
            return is_applicative(inner)
        case AppRight(fun, inner):
            return is_inert(fun) and is_applicative(inner)
    return False


def find_term_redex(t: Term):
    """``(H, redex)`` with ``t = H<redex>``, or None when ``t`` is a fireball.

    The head spine is searched first; once the head is inert the arguments
    are scanned left to right.
    """
    from .contexts import AppLeft, AppRight, Hole

    if not isinstance(t, App):
        return None
    if isinstance(t.fun, Abs):
        return Hole(), t
    found = find_term_redex(t.fun)
    if found is not None:
        ctx, redex = found
        return AppLeft(ctx, t.arg), redex
    found = find_term_redex(t.arg)
    if found is not None:
        ctx, redex = found
        return AppRight(t.fun, ctx), redex
    return None
