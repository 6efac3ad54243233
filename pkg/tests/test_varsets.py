import pytest
from hypothesis import given
from hypothesis import strategies as st

from cbneed.contexts import AppLeft, AppRight, Hole, plug_term
from cbneed.syntax import Var, parse_program, parse_term
from cbneed.varsets import anv, nv, sorted_names, unv, upd, useless

from conftest import programs, terms


def P(text):
    return parse_program(text)


def T(text):
    return parse_term(text)


class TestNeeded:
    def test_abstraction_has_none(self):
        assert nv(T(r"\x.x y")) == set()

    def test_program_example(self):
        assert nv(P(r"x (y (\z.z)) [z1 <- x][y <- \a.a]")) == {"x"}

    def test_empty_context(self):
        assert nv(Hole()) == set()

    def test_unneeded_entry_contributes_nothing(self):
        assert nv(P("x [z <- y]")) == {"x"}

    def test_needed_entry_contributes(self):
        assert nv(P("x [x <- y w]")) == {"y", "w"}


class TestApplied:
    def test_head_of_application(self):
        assert anv(T("y z")) == {"y"}

    def test_inside_argument(self):
        assert anv(T("z (y z)")) == {"z", "y"}

    def test_through_entry(self):
        assert "y" in anv(P("z x [x <- y z]"))

    def test_unneeded_entry(self):
        assert anv(P("x [z <- y x]")) == set()

    def test_variable_content_is_applied_when_binder_is(self):
        assert "y" in anv(P("x t [x <- y]"))
        assert "z" in anv(P("x t [x <- y][y <- z]"))


class TestUnapplied:
    def test_variable(self):
        assert unv(T("x")) == {"x"}

    def test_both(self):
        assert unv(T("x x")) == {"x"} and anv(T("x x")) == {"x"}

    def test_through_variable_entry(self):
        p = P("x x [x <- y]")
        assert "y" in unv(p) and "y" in anv(p)

    def test_unneeded_entry(self):
        assert "y" not in unv(P("x x [z <- x y]"))

    def test_argument_inside_needed_entry(self):
        assert "y" in unv(P("z x [x <- w y]"))


class TestUseless:
    def test_self_application(self):
        assert useless(P("x x")) == set()

    def test_hereditary(self):
        assert useless(P("y [y <- x x]")) == set()

    def test_unneeded_occurrence_ignored(self):
        assert "x" in useless(P("z x [y <- x x]"))


class TestUpd:
    def test_replaces(self):
        assert upd(frozenset("xz"), "x", "y") == {"y", "z"}

    def test_absent(self):
        assert upd(frozenset("z"), "x", "y") == {"z"}

    def test_empty(self):
        assert upd(frozenset(), "x", "y") == set()


class TestContexts:
    def test_variable_left_of_hole_is_applied(self):
        h = AppRight(Var("x"), Hole())
        assert anv(h) == {"x"} and unv(h) == set() and nv(h) == {"x"}

    def test_inert_left_of_hole(self):
        h = AppRight(T("x y"), Hole())
        assert anv(h) == {"x"} and unv(h) == {"y"}

    def test_arguments_right_of_hole_ignored(self):
        assert nv(AppLeft(Hole(), T("y z"))) == set()


def _contexts(t):
    """Every term context of ``t`` paired with its focus."""
    yield Hole(), t
    if hasattr(t, "fun"):
        for h, s in _contexts(t.fun):
            yield AppLeft(h, t.arg), s
        for h, s in _contexts(t.arg):
            yield AppRight(t.fun, h), s


class TestLaws:
    @given(terms)
    def test_cover_terms(self, t):
        assert nv(t) == anv(t) | unv(t)

    @given(programs)
    def test_cover_programs(self, p):
        assert nv(p) == anv(p) | unv(p)
        assert anv(p) <= nv(p) and unv(p) <= nv(p)

    @given(programs)
    def test_useless_laws(self, p):
        assert not useless(p) & anv(p)
        assert useless(p) | anv(p) >= unv(p)

    @given(terms)
    def test_cover_term_contexts(self, t):
        for h, _ in _contexts(t):
            assert nv(h) == anv(h) | unv(h)

    @given(terms, st.sampled_from("xyzq"))
    def test_contexts_give_needed_variables(self, t, x):
        for h, _ in _contexts(t):
            assert x in nv(plug_term(h, Var(x)))


def test_sorted_names_is_deterministic():
    assert sorted_names({"x2", "x10", "a"}) == sorted_names({"x10", "a", "x2"})
