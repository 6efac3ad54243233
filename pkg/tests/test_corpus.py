from cbneed.checks import SUITES, Workbench, run_suites, shape_key
from cbneed.corpus import WORKED_EXAMPLES, generate
from cbneed.syntax import free_vars, is_barendregt, parse_term, size


def test_generation_is_seeded():
    assert generate(50, seed=3) == generate(50, seed=3)
    assert generate(50, seed=3) != generate(50, seed=4)


def test_programs_are_well_formed(corpus):
    assert len(corpus) == 500
    assert all(is_barendregt(p) and size(p) <= 40 for p in corpus)


def test_mix_of_closed_and_open(corpus):
    closed = sum(not free_vars(p) for p in corpus)
    assert 50 < closed < 450


def test_examples_come_first(corpus):
    assert len(corpus[:len(WORKED_EXAMPLES)]) == len(WORKED_EXAMPLES)


def test_shape_key_ignores_names_only():
    assert shape_key(parse_term(r"\x.x y")) == shape_key(parse_term(r"\a.a b"))
    assert shape_key(parse_term(r"\x.x y")) != shape_key(parse_term(r"\x.x x"))


def test_all_suites_on_a_small_corpus():
    results = run_suites(Workbench(generate(60, seed=21)))
    assert [r.name for r in results] == list(SUITES)
    assert all(r.passed and r.checked for r in results), [r.summary() for r in results]
