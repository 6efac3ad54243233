"""Syntactic predicates for normal programs, and unfolding.

Open normal programs are either inert or abstractions.  Useful normal
programs are generalized variables (they unfold to a variable), useful
abstractions, or useful inerts.  The three useful predicates are computed
independently of one another, so that their disjointness can be tested
rather than assumed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .classify import TermClass, classify_term, is_inert
from .syntax import Abs, Program, Term, Var, size, subst
from .varsets import prefix_sets

__all__ = [
    "OpenNormalClass", "UsefulNormalClass", "GenVar", "UfAbs", "UfInert",
    "NotNormal", "onorm", "genvar", "ufabs", "ufinert", "useful_classes",
    "ufnorm", "OverlappingPredicates", "unfold", "UnfoldTooLarge", "DEFAULT_UNFOLD_CAP",
]

DEFAULT_UNFOLD_CAP = 1 << 22


class OpenNormalClass(str, Enum):
    INERT = "Inert"
    ABS = "Abs"
    NOT_NORMAL = "NotNormal"

    def __str__(self) -> str:
        return self.value


def onorm(p: Program) -> OpenNormalClass:
    """Fold the open normal-form rules over the environment."""
    head_class = classify_term(p.head)
    if head_class is TermClass.VALUE:
        return OpenNormalClass.ABS  # abstractions absorb any environment
    if head_class is TermClass.NON_NORMAL:
        return OpenNormalClass.NOT_NORMAL
    for (x, content), (needed, _, _) in zip(p.env, prefix_sets(p)):
        if x in needed and not is_inert(content):
            return OpenNormalClass.NOT_NORMAL
    return OpenNormalClass.INERT


@dataclass(frozen=True)
class GenVar:
    head: str

    def __str__(self) -> str:
        return f"GenVar({self.head})"


class _Tag(str, Enum):
    UF_ABS = "UfAbs"
    UF_INERT = "UfInert"
    NOT_NORMAL = "NotNormal"

    def __str__(self) -> str:
        return self.value


UfAbs = _Tag.UF_ABS
UfInert = _Tag.UF_INERT
NotNormal = _Tag.NOT_NORMAL
UsefulNormalClass = Union[GenVar, _Tag]


def _genvar_prefixes(p: Program) -> list:
    """Head variable of each prefix ``(head, env[:j])`` that is a generalized variable."""
    out: list = []
    current = p.head.name if isinstance(p.head, Var) else None
    out.append(current)
    for x, content in p.env:
        if current is not None and x == current:
            current = content.name if isinstance(content, Var) else None
        out.append(current)
    return out


def genvar(p: Program) -> Optional[str]:
    """The hereditary head variable when ``p`` is a generalized variable."""
    return _genvar_prefixes(p)[-1]


def ufabs(p: Program) -> bool:
    gv = _genvar_prefixes(p)
    holds = isinstance(p.head, Abs)
    for j, (x, content) in enumerate(p.env):
        if holds:
            continue
        holds = isinstance(content, Abs) and gv[j] == x
    return holds


def ufinert(p: Program) -> bool:
    gv = _genvar_prefixes(p)
    holds = classify_term(p.head) is TermClass.NON_VAR_INERT
    for j, ((x, content), (needed, applied, unapplied)) in enumerate(
            zip(p.env, prefix_sets(p))):
        content_class = classify_term(content)
        promoted = (content_class is TermClass.NON_VAR_INERT and gv[j] == x)
        if holds:
            if x not in needed:
                kept = True
            elif content_class in (TermClass.VAR_INERT, TermClass.NON_VAR_INERT):
                kept = True
            elif content_class is TermClass.VALUE:
                kept = x in unapplied and x not in applied
            else:
                kept = False
            holds = kept or promoted
        else:
            holds = promoted
    return holds


def useful_classes(p: Program) -> list:
    """Every useful normal-form predicate that holds for ``p``."""
    found = []
    head = genvar(p)
    if head is not None:
        found.append(GenVar(head))
    if ufabs(p):
        found.append(UfAbs)
    if ufinert(p):
        found.append(UfInert)
    return found


class OverlappingPredicates(AssertionError):
    """More than one useful normal-form predicate holds."""


def ufnorm(p: Program):
    """``GenVar(x)``, ``UfAbs``, ``UfInert`` or ``NotNormal``."""
    found = useful_classes(p)
    if len(found) > 1:
        raise OverlappingPredicates(f"useful predicates overlap on {p}: {found}")
    return found[0] if found else NotNormal


class UnfoldTooLarge(Exception):
    def __init__(self, cap: int):
        super().__init__(f"unfolding exceeds {cap} nodes")
        self.cap = cap


def unfold(p: Program, cap: int | None = None) -> Term:
    """Substitute the environment into the head, innermost entry first.

    The result shares subterms, so its tree size may be exponential while
    memory stays proportional to the work done.
    """
    if cap is None:
        cap = int(os.environ.get("CBNEED_UNFOLD_CAP", DEFAULT_UNFOLD_CAP))
    t = p.head
    for x, content in p.env:
        t = subst(t, x, content)
        if size(t) > cap:
            raise UnfoldTooLarge(cap)
    return t
