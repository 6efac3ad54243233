"""Seeded random programs for the invariant suites.

Programs respect the Barendregt convention by construction.  The generator
leans towards shapes that exercise the interesting rules: values bound in
the environment, variables in applied position, and chains of
variable-to-variable entries.
"""

from __future__ import annotations

import random
from typing import Iterator

from .syntax import Abs, App, Program, Term, Var, parse_program, size

__all__ = ["random_program", "generate", "iter_programs", "WORKED_EXAMPLES"]

# hand-picked programs that every corpus starts with
WORKED_EXAMPLES = (
    r"x y [x <- \z.z]",
    r"x y [y <- \z.z]",
    r"x y [x <- z][z <- \a.a]",
    r"x t [x <- y][y <- \v.v]",
    r"x [x <- y][y <- \z.z]",
    r"x [x <- y][y <- z w]",
    r"x (y (\z.z)) [z1 <- x][y <- \a.a]",
    r"x ((\z.z) (\a.a)) [y <- w]",
    r"y x [x <- y ((\z.z) (\a.a))]",
    r"z x [x <- y z1][z1 <- \v.v]",
    r"x x [x <- y]",
    r"w ((\z.z) y) [w <- \v.v]",
    r"(\x.x x) (\y.y y)",
    r"(\x.x) (\y.y)",
    r"x t [x <- (\y.u) s t'][z <- u']",
)

_BINDERS = "xyzwvuts"
_FREE = "abc"


class _Names:
    def __init__(self):
        self.counter = 0

    def fresh(self, root: str) -> str:
        self.counter += 1
        return f"{root}{self.counter}"


def _value(rng: random.Random, scope: list, names: _Names, budget: int) -> Term:
    var = names.fresh(rng.choice("pqr"))
    inner = scope + [var]
    shape = rng.random()
    if shape < 0.35 or budget < 4:
        return Abs(var, Var(var))
    if shape < 0.6:
        return Abs(var, App(Var(var), Var(var)))
    return Abs(var, _term(rng, inner, names, budget - 1, depth=1))


def _term(rng: random.Random, scope: list, names: _Names, budget: int,
          depth: int = 0) -> Term:
    if budget <= 1 or depth > 5:
        return Var(rng.choice(scope))
    roll = rng.random()
    if roll < 0.3:
        return Var(rng.choice(scope))
    if roll < 0.45:
        return _value(rng, scope, names, budget)
    left = max(1, budget // 2)
    if roll < 0.75:
        # variable head, the common case that makes positions applied
        fun: Term = Var(rng.choice(scope))
    elif roll < 0.87:
        fun = _value(rng, scope, names, left)
    else:
        fun = _term(rng, scope, names, left, depth + 1)
    arg = _term(rng, scope, names, budget - left, depth + 1)
    return App(fun, arg)


def random_program(rng: random.Random, max_size: int = 40) -> Program:
    """One program of at most ``max_size`` nodes."""
    while True:
        names = _Names()
        closed = rng.random() < 0.25
        free = [] if closed else list(_FREE[:rng.randint(1, len(_FREE))])
        n_entries = rng.choice((0, 1, 1, 2, 2, 3, 3, 4, 5))
        binders = [names.fresh(rng.choice(_BINDERS)) for _ in range(n_entries)]
        env = []
        # build outermost first: entry j sees the binders to its right
        for j in reversed(range(n_entries)):
            scope = binders[j + 1:] + free
            roll = rng.random()
            if not scope or roll < 0.35:
                content = _value(rng, scope, names, rng.randint(2, 8))
            elif roll < 0.6:
                later = binders[j + 1:]
                content = Var(rng.choice(later or scope))
            else:
                content = _term(rng, scope, names, rng.randint(2, 10))
            env.append((binders[j], content))
        env.reverse()
        scope = binders + free
        if not scope:
            head = App(_value(rng, [], names, 6), _value(rng, [], names, 6))
        elif rng.random() < 0.5 and binders:
            head = Var(rng.choice(binders))
            for _ in range(rng.randint(0, 2)):
                head = App(head, _term(rng, scope, names, rng.randint(1, 5)))
        else:
            head = _term(rng, scope, names, rng.randint(2, 12))
        p = Program(head, tuple(env))
        if size(p) <= max_size:
            return p


def generate(count: int, max_size: int = 40, seed: int = 0,
             include_examples: bool = True) -> list:
    """``count`` programs: the worked examples first, then random ones."""
    rng = random.Random(seed)
    out: list = []
    if include_examples:
        out.extend(parse_program(text) for text in WORKED_EXAMPLES)
    while len(out) < count:
        out.append(random_program(rng, max_size))
    return out[:count]


def iter_programs(count: int, max_size: int = 40, seed: int = 0) -> Iterator[Program]:
    yield from generate(count, max_size, seed)
