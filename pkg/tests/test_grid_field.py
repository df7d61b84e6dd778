import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mosmax import Ball, EmptyBallError, FieldFormatError, Grid, GridField, ball_average, candidate_radii, load_field, make_field, save_field
from mosmax.grid_field import lattice_count, parse_field


def test_indicator_has_65_ones(chi64):
    assert int(chi64.values.sum()) == 65
    assert set(np.unique(chi64.values)) == {0.0, 1.0}


def test_zero_and_tent():
    g = Grid.from_box(-2, 2, 1 / 16)
    assert make_field(g, "zero()").is_zero()
    tent = make_field(g, "tent(0.0, 1.0)").values
    assert np.array_equal(tent, tent[::-1]) and tent.max() == 1.0


def test_field_is_immutable_and_finite(chi64):
    with pytest.raises(ValueError):
        chi64.values[0] = 3.0
    with pytest.raises(FieldFormatError):
        GridField(chi64.grid, np.full(chi64.grid.shape, np.nan))
    with pytest.raises(FieldFormatError):
        GridField(chi64.grid, np.zeros(3))


def test_ball_average_examples(chi64):
    assert ball_average(chi64, Ball((0.5,), 0.25)) == 1.0
    assert abs(ball_average(chi64, Ball((2.0,), 2.0)) - 0.25) <= 2 * chi64.grid.h


@given(c=st.floats(-5, 5), x=st.floats(-6, 6), r=st.floats(1 / 16, 10))
def test_ball_average_of_constant(c, x, r):
    g = Grid.from_box(-4, 4, 1 / 16)
    f = make_field(g, f"constant({c!r})")
    inside = abs(x) + r <= 4
    avg = ball_average(f, Ball((x,), r))
    if inside:
        assert math.isclose(avg, c, rel_tol=1e-12, abs_tol=1e-12)
    else:
        assert abs(avg) <= abs(c) * (1 + 1e-12)


def test_ball_average_2d_constant():
    g = Grid.from_box((-1, -1), (1, 1), 1 / 8)
    f = make_field(g, "constant(2.0)")
    assert math.isclose(ball_average(f, Ball((0.0, 0.0), 0.5)), 2.0, rel_tol=1e-14)


def test_empty_ball():
    g = Grid.from_box(0, 1, 0.25)
    with pytest.raises(EmptyBallError):
        ball_average(make_field(g, "zero()"), Ball((0.1,), 0.01))


def test_candidate_radii_examples():
    r = candidate_radii(Grid.from_box(0, 1, 0.25), 1.0)
    assert r[0] == 0.0 and np.allclose(r[1:], 0.125 * np.arange(1, 9))
    g = Grid.from_box(0, 1, 1 / 64)
    assert np.allclose(candidate_radii(g, g.h)[1:], [g.h / 2, g.h])
    assert len(candidate_radii(g, 8.0)) - 1 == 1024


@given(k=st.integers(0, 60))
def test_lattice_count_matches_brute_force(k):
    m = np.arange(-k, k + 1)
    assert lattice_count(1, k) == int(np.sum(4 * m ** 2 <= k * k))
    a, b = np.meshgrid(m, m)
    assert lattice_count(2, k) == int(np.sum(4 * (a ** 2 + b ** 2) <= k * k))


def test_field_file_round_trip(tmp_path):
    g = Grid.from_box((-1, 0), (1, 0.5), 0.25)
    f = make_field(g, "gaussian((0.0, 0.2), 0.4)")
    p = tmp_path / "f.field"
    save_field(f, p)
    back = load_field(p)
    assert back.grid.header() == g.header()
    assert np.array_equal(back.values, f.values)
    assert np.array_equal(make_field(g, f"file:{p}").values, f.values)


def test_bad_field_files():
    for text in ("", "3 0.1 2 0 0", "1 0.5 3 0.0 1 2", "1 x 3 0.0 1 2 3"):
        with pytest.raises(FieldFormatError):
            parse_field(text)


def test_refined_grid_nests():
    g = Grid.from_box(-1, 1, 0.25)
    fine = g.refined()
    assert np.allclose(fine.points()[::2], g.points())
    assert fine.upper == g.upper
