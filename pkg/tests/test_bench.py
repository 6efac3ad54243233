import csv
import io
import json

import pytest

from cbneed.bench import (CSV_COLUMNS, SIZE_CONSTANT, gen_t, gen_u, run_family, to_csv,
                          to_json)
from cbneed.syntax import alpha_eq, parse_term, size


def test_first_member():
    assert alpha_eq(gen_t(1), parse_term(r"\x.\y.y x x"))


def test_second_member():
    assert alpha_eq(gen_t(2), parse_term(r"\x.(\x1.\y1.y1 x1 x1) (\y.y x x)"))


def test_t_grows_linearly():
    sizes = [size(gen_t(n)) for n in range(1, 8)]
    assert len({b - a for a, b in zip(sizes, sizes[1:])}) == 1


def test_results():
    assert alpha_eq(gen_u(0), parse_term(r"\z.z"))
    assert alpha_eq(gen_u(1), parse_term(r"\y.y (\z.z) (\z.z)"))
    assert all(size(gen_u(n)) >= 2 ** n for n in range(12))


def test_bad_indices():
    with pytest.raises(ValueError):
        gen_t(0)
    with pytest.raises(ValueError):
        gen_u(-1)


@pytest.fixture(scope="module")
def points():
    return run_family(10)


def test_family_points(points):
    for p in points:
        assert p.beta_steps == p.n and p.beta_matches
        assert p.um == p.n and p.ue == 0
        assert p.strategy_counts["open"] == {"om": p.n, "oe": 0}
        assert p.final_class == "UfAbs" and p.open_class == "Abs"
        assert p.final_program_size <= SIZE_CONSTANT * p.n
        assert p.unfold_size >= 2 ** p.n and p.unfold_matches


def test_cap_marks_points():
    points = run_family(4, unfold_cap=30)
    assert [p.unfold_size for p in points][-1] == "capped"
    assert points[-1].unfold_matches is None


def test_csv(points):
    rows = list(csv.DictReader(io.StringIO(to_csv(points[:3]))))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert [r["beta_steps"] for r in rows] == ["1", "2", "3"]
    assert [r["um"] for r in rows] == ["1", "2", "3"]
    assert {r["ue"] for r in rows} == {"0"}


def test_json(points):
    data = json.loads(to_json(points[:2]))
    assert data[1]["n"] == 2 and data[1]["strategy_counts"]["useful"]["um"] == 2
