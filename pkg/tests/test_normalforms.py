import pytest
from hypothesis import given

from cbneed.classify import TermClass, classify_term, is_fireball
from cbneed.engines import Strategy, find_redex
from cbneed.normalforms import (GenVar, NotNormal, OpenNormalClass, OverlappingPredicates,
                                UfAbs, UfInert, UnfoldTooLarge, onorm, ufnorm, unfold,
                                useful_classes)
from cbneed.syntax import Var, identity, parse_program, parse_term, size
from cbneed.varsets import anv, nv, unv

from conftest import programs

P = parse_program


class TestOpenNormal:
    @pytest.mark.parametrize("text,cls", [
        (r"\z.z", OpenNormalClass.ABS),
        ("x y [y <- z w]", OpenNormalClass.INERT),
        (r"x [x <- \z.z]", OpenNormalClass.NOT_NORMAL),
        (r"(\z.z) [x <- (\a.a) b]", OpenNormalClass.ABS),
        (r"x [y <- (\a.a) b]", OpenNormalClass.INERT),
        (r"x [x <- (\a.a) b]", OpenNormalClass.NOT_NORMAL),
    ])
    def test_examples(self, text, cls):
        assert onorm(P(text)) is cls

    def test_str(self):
        assert str(OpenNormalClass.INERT) == "Inert"


class TestUsefulNormal:
    @pytest.mark.parametrize("text,cls", [
        ("x [x <- y]", GenVar("y")),
        (r"x [x <- y][y <- \z.z]", UfAbs),
        (r"x y [y <- \z.z]", UfInert),
        ("x [x <- y][y <- z w]", UfInert),
        (r"x y [x <- \z.z]", NotNormal),
        (r"x [x <- \z.z]", UfAbs),
        ("x [y <- z]", GenVar("x")),
    ])
    def test_examples(self, text, cls):
        assert ufnorm(P(text)) == cls

    def test_genvar_prints(self):
        assert str(ufnorm(P("x [x <- y]"))) == "GenVar(y)"

    @given(programs)
    def test_at_most_one_predicate(self, p):
        assert len(useful_classes(p)) <= 1

    @given(programs)
    def test_characterizations(self, p):
        assert (find_redex(p, Strategy.OPEN) is None) == (onorm(p) is not OpenNormalClass.NOT_NORMAL)
        assert (find_redex(p, Strategy.USEFUL) is None) == (ufnorm(p) is not NotNormal)

    @given(programs)
    def test_unfolding_of_normal_forms(self, p):
        cls = ufnorm(p)
        if cls is NotNormal:
            return
        t = unfold(p)
        assert is_fireball(t)
        if isinstance(cls, GenVar):
            assert t == Var(cls.head)
            assert nv(p) == unv(p) == {cls.head} and not anv(p)
        elif cls is UfAbs:
            assert classify_term(t) is TermClass.VALUE
            assert not (nv(p) or unv(p) or anv(p))
        else:
            assert classify_term(t) is TermClass.NON_VAR_INERT
            assert anv(p) == anv(t) and unv(p) == unv(t) and anv(p)

    def test_overlap_is_reported(self, monkeypatch):
        import cbneed.normalforms as nf
        monkeypatch.setattr(nf, "ufabs", lambda p: True)
        with pytest.raises(OverlappingPredicates):
            nf.ufnorm(P("x [x <- y]"))


class TestUnfold:
    def test_empty_environment(self):
        t = parse_term("x y")
        assert unfold(P("x y")) == t

    def test_to_value(self):
        assert unfold(P(r"x [x <- y][y <- \z.z]")) == identity()

    def test_to_inert(self):
        assert unfold(P("x [x <- y][y <- z w]")) == parse_term("z w")

    def test_cap(self):
        text = "x [x <- y y]" + "".join(f"[{a} <- {b} {b}]" for a, b in
                                        zip("yzwvu", "zwvuq"))
        p = P(text)
        assert size(unfold(p)) == 127  # 64 leaves, 63 applications
        with pytest.raises(UnfoldTooLarge):
            unfold(p, cap=100)

    def test_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("CBNEED_UNFOLD_CAP", "3")
        with pytest.raises(UnfoldTooLarge):
            unfold(P("x [x <- y y][y <- z z]"))
