import pytest
from hypothesis import given

from cbneed.contexts import (AppLeft, AppRight, EnvCtx, HeadCtx, Hole, append_es,
                             derive_exp, derive_hhctx, derive_mult, derive_open,
                             dom, lookup, occurrences, plug_prog, plug_term, show_ctx)
from cbneed.oracle import enumerate_decompositions
from cbneed.syntax import App, Program, Var, identity, parse_program, parse_term
from cbneed.varsets import anv, nv

from conftest import programs

I = identity()
T = parse_term
x, y, z, t, u, s = (Var(n) for n in "xyztus")


class TestPlugTerm:
    def test_hole(self):
        assert plug_term(Hole(), t) == t

    def test_argument(self):
        assert plug_term(AppRight(x, Hole()), y) == App(x, y)

    def test_nested(self):
        v = T(r"\x.t")
        assert plug_term(AppLeft(AppLeft(Hole(), u), s), v) == App(App(v, u), s)


class TestPlugProgram:
    def test_splices_after_hole_entry(self):
        ctx = EnvCtx(App(x, y), (("x", t),), "y", Hole(), (("z", u),))
        out = plug_prog(ctx, s, (("x'", Var("t'")),))
        assert out == Program(App(x, y), (("x", t), ("y", s), ("x'", Var("t'")), ("z", u)))

    def test_empty(self):
        assert plug_prog(HeadCtx(Hole()), t) == Program(t)

    def test_head_context_prefixes(self):
        ctx = HeadCtx(AppLeft(Hole(), y), (("a", u),))
        out = plug_prog(ctx, x, (("b", s),))
        assert out == Program(App(x, y), (("b", s), ("a", u)))

    def test_clash_rejected(self):
        with pytest.raises(ValueError):
            plug_prog(HeadCtx(Hole(), (("a", u),)), x, (("a", s),))


class TestAppend:
    def test_program(self):
        assert append_es(Program(t), "x", u) == Program(t, (("x", u),))

    def test_head_context(self):
        assert append_es(HeadCtx(Hole()), "x", u) == HeadCtx(Hole(), (("x", u),))

    def test_env_context_goes_outside(self):
        ctx = EnvCtx(t, (), "y", Hole())
        assert append_es(ctx, "x", u).right == (("x", u),)

    def test_duplicate_rejected(self):
        with pytest.raises(ValueError):
            append_es(Program(t, (("x", u),)), "x", s)


class TestLookup:
    def test_found(self):
        assert lookup((("x", t),), "x") == t
        assert lookup((("y", u), ("x", t)), "x") == t

    def test_missing(self):
        assert lookup((("y", u),), "x") is None

    def test_env_context_sees_outer_entries_only(self):
        ctx = EnvCtx(x, (("a", u),), "x", Hole(), (("b", s),))
        assert dom(ctx) == {"b"}


def _ctx(text):
    """The context written with ``<.>`` for its hole."""
    p = parse_program(text.replace("<.>", "HOLE"), rename=False)
    for ctx, sub in enumerate_decompositions(p):
        if sub == Var("HOLE"):
            return ctx
    raise AssertionError("no hole")


class TestDeriveOpen:
    def test_empty(self):
        assert derive_open(HeadCtx(Hole())) == set()

    def test_hereditary(self):
        assert derive_open(_ctx("x y [y <- <.>]")) == {"x"}

    def test_unreachable_entry(self):
        assert derive_open(_ctx("x [y <- <.>]")) is None

    def test_inert_entry(self):
        assert derive_open(_ctx("x y [y <- <.>][x <- z z]")) == {"z"}

    def test_useless_value_is_not_open(self):
        assert derive_open(_ctx(r"y x <.> [x <- \v.v]")) is None


class TestDeriveMult:
    def test_useless_value_skipped(self):
        ctx = _ctx(r"y x <.> [x <- \v.v]")
        assert derive_mult(ctx) == (frozenset(), frozenset({"y"}))

    def test_empty(self):
        assert derive_mult(HeadCtx(Hole())) == (frozenset(), frozenset())

    def test_variable_entry_renames(self):
        assert derive_mult(_ctx("x <.> [x <- w]")) == (frozenset(), frozenset({"w"}))


class TestDeriveExp:
    def test_jump_through_variable(self):
        assert derive_exp(_ctx("x t [x <- <.>]")) == (frozenset(), frozenset(), 1)

    def test_applicative_entry(self):
        assert derive_exp(_ctx("x [x <- <.> t]")) == (frozenset(), frozenset(), 0)

    def test_multiplicative_only(self):
        ctx = _ctx("x <.> [x <- y w]")
        assert derive_exp(ctx) is None
        assert derive_mult(ctx) is not None

    def test_jump_through_first_occurrence(self):
        assert derive_exp(_ctx("x x [x <- <.>]")) == (frozenset(), frozenset(), 1)

    def test_unapplied_binder_has_no_jump(self):
        assert derive_exp(_ctx("y x [x <- <.>]")) is None

    def test_unreachable_binder(self):
        assert derive_exp(_ctx("y t [x <- <.>]")) is None


class TestHereditaryHead:
    def test_head(self):
        assert derive_hhctx(HeadCtx(AppLeft(Hole(), t)))

    def test_chain(self):
        assert derive_hhctx(_ctx("x y [x <- z][z <- <.>]"))

    def test_unreachable(self):
        assert not derive_hhctx(_ctx(r"(\y1.y1) [x <- <.>]"))

    def test_argument_is_not_head(self):
        assert not derive_hhctx(_ctx("x <.>"))


class TestOccurrences:
    def test_all_positions(self):
        p = parse_program("x x [y <- x]")
        assert len(list(occurrences(p.head, p.env, "x"))) == 3


class TestShow:
    def test_env_context(self):
        assert show_ctx(_ctx("x t [x <- <.>]")) == "x t [x <- <.>]"


@given(programs)
def test_exponential_contexts_are_multiplicative(p):
    for ctx, _ in enumerate_decompositions(p):
        exp = derive_exp(ctx)
        if exp is None:
            continue
        mult = derive_mult(ctx)
        assert mult is not None and mult[0] <= exp[0] and mult[1] <= exp[1]


@given(programs)
def test_contexts_produce_needed_and_applied_variables(p):
    probe = Var("fresh_probe")
    for ctx, _ in enumerate_decompositions(p):
        plugged = plug_prog(ctx, probe)
        if derive_open(ctx) is not None or derive_mult(ctx) is not None:
            assert probe.name in nv(plugged)
        if derive_exp(ctx) is not None:
            assert probe.name in anv(plugged)


@given(programs)
def test_decompositions_plug_back(p):
    for ctx, sub in enumerate_decompositions(p):
        assert plug_prog(ctx, sub) == p
