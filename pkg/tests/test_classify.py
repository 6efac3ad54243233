import pytest
from hypothesis import given

from cbneed.classify import (TermClass, classify_term, find_term_redex, is_applicative,
                             is_fireball, is_head_ctx, is_nonvar_inert)
from cbneed.contexts import AppLeft, AppRight, Hole, plug_term
from cbneed.syntax import App, Abs, Var, parse_term
from cbneed.varsets import anv, nv

from conftest import terms

T = parse_term


@pytest.mark.parametrize("text,cls", [
    (r"\x.x", TermClass.VALUE),
    ("x", TermClass.VAR_INERT),
    (r"x (\y.y)", TermClass.NON_VAR_INERT),
    ("x y z", TermClass.NON_VAR_INERT),
    (r"(\x.x) y", TermClass.NON_NORMAL),
    (r"x ((\y.y) z)", TermClass.NON_NORMAL),
    (r"\x.(\y.y) x", TermClass.VALUE),
])
def test_classify(text, cls):
    assert classify_term(T(text)) is cls


class TestApplicative:
    def test_hole_applied(self):
        assert is_applicative(AppLeft(Hole(), Var("t")))

    def test_bare_hole(self):
        assert not is_applicative(Hole())

    def test_under_inert(self):
        assert is_applicative(AppRight(Var("x"), AppLeft(Hole(), Var("t"))))
        assert not is_applicative(AppRight(Var("x"), Hole()))

    def test_under_non_inert(self):
        assert not is_applicative(AppRight(T(r"(\y.y) z"), AppLeft(Hole(), Var("t"))))


class TestFindRedex:
    def test_fireball(self):
        assert find_term_redex(Var("x")) is None

    def test_top(self):
        t = T(r"(\x.x) y")
        assert find_term_redex(t) == (Hole(), t)

    def test_argument_of_inert(self):
        ctx, redex = find_term_redex(T(r"x ((\y.y) z)"))
        assert ctx == AppRight(Var("x"), Hole()) and redex == T(r"(\y.y) z")

    def test_leftmost_argument_first(self):
        ctx, _ = find_term_redex(T(r"x ((\a.a) b) ((\c.c) d)"))
        assert ctx == AppLeft(AppRight(Var("x"), Hole()), T(r"(\c.c) d"))

    @given(terms)
    def test_none_iff_fireball(self, t):
        found = find_term_redex(t)
        assert (found is None) == is_fireball(t)
        if found is not None:
            ctx, redex = found
            assert plug_term(ctx, redex) == t
            assert isinstance(redex, App) and isinstance(redex.fun, Abs)
            assert is_head_ctx(ctx)

    @given(terms)
    def test_unique_among_head_decompositions(self, t):
        # any other head-context decomposition around a beta redex whose
        # surrounding needed variables leave a free variable first fails
        found = find_term_redex(t)
        if found is None:
            return
        ctx, _ = found
        for other, sub in _head_positions(t):
            if other == ctx:
                continue
            is_place = (isinstance(sub, App) and isinstance(sub.fun, Abs)) or (
                isinstance(sub, Var) and sub.name not in nv(ctx) | nv(other))
            assert not is_place


def _head_positions(t):
    out = []

    def go(node, build):
        out.append((build(Hole()), node))
        if isinstance(node, App):
            go(node.fun, lambda h: build(AppLeft(h, node.arg)))
            if classify_term(node.fun) in (TermClass.VAR_INERT, TermClass.NON_VAR_INERT):
                go(node.arg, lambda h: build(AppRight(node.fun, h)))

    go(t, lambda h: h)
    return [(h, s) for h, s in out if is_head_ctx(h)]


@given(terms)
def test_nonvar_inert_has_applied_variable(t):
    if is_nonvar_inert(t):
        assert anv(t)
