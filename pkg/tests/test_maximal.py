import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from mosmax import (Ball, Grid, GridField, PhiFunction, PreconditionError, SampleSpec, UndefinedBoundError,
                    average_decay_bound, ball_average, decay_constants, localization_check, make_field, max_radius,
                    maximal_function, maximal_function_naive, radius_set, radius_table, radius_upper_bound)
from mosmax.grid_field import candidate_radii
from mosmax.maximal import node_profile, ring_offsets

G1 = Grid.from_box(-1.0, 1.0, 1 / 16)
G2 = Grid.from_box((-1.0, -1.0), (1.0, 1.0), 1 / 4)
vals1 = arrays(np.float64, G1.shape, elements=st.floats(-5, 5, allow_nan=False))
vals2 = arrays(np.float64, G2.shape, elements=st.floats(-5, 5, allow_nan=False))


def brute_force_maximal(field, r_max=None):
    """sup over candidate radii of ball_average, node by node."""
    g = field.grid
    r_max = g.diameter if r_max is None else r_max
    radii = candidate_radii(g, r_max)[1:]
    pts = g.points()
    out = np.empty(g.size)
    for i, p in enumerate(pts):
        c = tuple(np.atleast_1d(p))
        out[i] = max([abs(field.flat()[i])] + [ball_average(field.abs(), Ball(c, r)) for r in radii])
    return out.reshape(g.shape)


def test_indicator_closed_form(chi64):
    g = chi64.grid
    mf = maximal_function(chi64)
    x = g.points().reshape(-1)
    inside = (x >= 0) & (x <= 1)
    assert np.all(mf.values[inside] == 1.0)
    far = (x >= 1.5) & (x <= 4)
    assert np.max(np.abs(mf.values[far] - 1 / (2 * x[far]))) <= 0.05
    assert abs(mf.values[g.node_index(2.0)] - 0.25) < 0.01
    assert abs(mf.values[g.node_index(3.0)] - 1 / 6) < 0.01


def test_zero_and_constant():
    g = Grid.from_box(-2, 2, 1 / 16)
    assert maximal_function(make_field(g, "zero()")).is_zero()
    mf = maximal_function(make_field(g, "constant(3.0)"))
    assert np.all(mf.values == 3.0)


@given(v=vals1)
def test_fast_equals_naive_1d(v):
    f = GridField(G1, v)
    assert np.array_equal(maximal_function(f).values, maximal_function_naive(f).values)


@given(v=vals2)
def test_fast_equals_naive_2d(v):
    f = GridField(G2, v)
    assert np.array_equal(maximal_function(f).values, maximal_function_naive(f).values)


def test_matches_brute_force_ball_average():
    rng = np.random.default_rng(0)
    for g in (G1, G2):
        f = GridField(g, rng.standard_normal(g.shape))
        assert np.allclose(maximal_function(f).values, brute_force_maximal(f), rtol=1e-12, atol=0)


@given(v=vals1, w=vals1, c=st.floats(-4, 4))
def test_sublinear_homogeneous_dominating(v, w, c):
    f, g = GridField(G1, v), GridField(G1, w)
    mf, mg = maximal_function(f).values, maximal_function(g).values
    tol = 1e-12 * (1 + np.abs(mf) + np.abs(mg))
    assert np.all(maximal_function(f + g).values <= mf + mg + tol)
    assert np.allclose(maximal_function(f * c).values, abs(c) * mf, rtol=1e-12, atol=1e-300)
    assert np.all(mf >= np.abs(v))
    assert np.all(mf <= np.max(np.abs(v)) + 1e-12)


@given(v=vals1)
def test_monotone_in_r_max(v):
    f = GridField(G1, v)
    a = maximal_function(f, 0.25).values
    b = maximal_function(f, 1.0).values
    assert np.all(a <= b)


def test_node_profile_matches_sweep():
    rng = np.random.default_rng(5)
    f = GridField(G2, rng.random(G2.shape))
    K = 10
    table = radius_table(f, np.ones(G2.shape, dtype=bool), K * G2.h / 2)
    for j, node in enumerate([(0, 0), (3, 4), (8, 8)]):
        flat = np.ravel_multi_index(node, G2.shape)
        col = int(np.nonzero(table.nodes == flat)[0][0])
        assert np.array_equal(node_profile(f.values, node, K), table.profile[:, col])


def test_ring_offsets_counts():
    for dim in (1, 2):
        offs, ring, counts = ring_offsets(dim, 12)
        assert counts[0] == 1 and np.all(np.diff(counts) >= 0)
        assert np.all(np.diff(ring) >= 0)


def test_radius_set_examples(chi64):
    rs = radius_set(chi64, chi64.grid.node_index(0.5))
    h = chi64.grid.h
    small = [r for r in candidate_radii(chi64.grid, 0.5)[1:]]
    assert all(r in rs for r in small)
    rs = radius_set(chi64, chi64.grid.node_index(2.0))
    assert np.all(np.abs(rs.radii - 2.0) <= 2 * h)
    z = radius_set(chi64 * 0, chi64.grid.node_index(0.0))
    assert len(z) == len(candidate_radii(chi64.grid, chi64.grid.diameter))


def test_radius_set_scale_invariant(chi64):
    f = make_field(chi64.grid, "gaussian(0.5, 0.3)") + chi64
    for x in (-2.0, 0.25, 1.7):
        a = radius_set(f, f.grid.node_index(x))
        b = radius_set(f * 3.0, f.grid.node_index(x))
        assert np.array_equal(a.radii, b.radii)


def test_average_decay_example(chi64):
    c = decay_constants(PhiFunction.power_law(2), SampleSpec())
    r = average_decay_bound(PhiFunction.power_law(2), chi64, c.p, c.a, c.beta, Ball((0.0,), 2.0))
    assert r.passed
    assert abs(r.details["left"] - 0.25) < 0.01
    # (2 a^(1/2) / beta) ||chi|| |B|^(-1/2) with a = 1, beta = 1/2, |B| = 4
    assert math.isclose(r.details["right"], 2 / 0.5 * math.sqrt(65 / 64) / 2, rel_tol=1e-6)
    z = average_decay_bound(PhiFunction.power_law(2), chi64 * 0, 2, 1, 0.5, Ball((0.0,), 2.0))
    assert z.passed
    small = average_decay_bound(PhiFunction.power_law(2), chi64, 2, 1, 0.5, Ball((0.0,), 0.25))
    assert small.skipped


def test_average_decay_on_many_radii():
    g = Grid.from_box(-16, 16, 1 / 16)
    phi = PhiFunction.double_phase(2, 4, "clamped_ramp(0.0, 1.0, -16.0, 16.0)")
    c = decay_constants(phi, SampleSpec.from_grid(g))
    f = make_field(g, "gaussian(1.0, 0.6, 2.0)")
    for r in np.linspace(0.5, 15.0, 50):
        rep = average_decay_bound(phi, f, c.p, c.a, c.beta, Ball((0.0,), float(r)))
        assert rep.passed


def test_radius_upper_bound_indicator(chi64):
    rb = radius_upper_bound(PhiFunction.power_law(2), chi64, 4.0)
    assert math.isfinite(rb.r0) and rb.within and rb.scan_complete
    # worst node x = -4 needs a ball reaching x = 1
    assert 5.0 <= rb.r0 <= 5.0 + chi64.grid.h
    assert max_radius(chi64 * 2, 4.0) == max_radius(chi64, 4.0)


def test_radius_upper_bound_local_for_wide_bump():
    # every ball inside the plateau ties, so radius sets stop where balls leave it
    g = Grid.from_box(-8, 8, 1 / 32)
    f = make_field(g, "plateau(-3.0, 3.0, 0.5)")
    assert max_radius(f, 0.5) <= 3.0 + 0.5
    spike = make_field(g, "indicator(6.0, 6.5)")
    assert max_radius(spike, 0.5) > max_radius(f, 0.5)


def test_radius_bound_rejects_zero(chi64):
    with pytest.raises(UndefinedBoundError):
        radius_upper_bound(PhiFunction.power_law(2), chi64 * 0, 1.0)


def test_localization_examples():
    g = Grid.from_box(-2, 14, 1 / 16)
    f = make_field(g, "indicator(0, 1)") + make_field(g, "indicator(10, 11)")
    r0 = max_radius(f, 2.0)
    frak = r0 + 2.0 + g.h
    rep = localization_check(f, 2.0, frak)
    assert rep.passed and rep.details["equal_max"] and rep.details["equal_radius_sets"]
    outer = g.node_norms() > frak
    g2 = f.with_values(np.where(outer, 0.5 * f.values, f.values))
    assert localization_check(f, 2.0, frak, g=g2).passed
    with pytest.raises(PreconditionError):
        localization_check(f, 2.0, r0)


def test_localization_trivial_when_supported_inside():
    g = Grid.from_box(-4, 4, 1 / 16)
    f = make_field(g, "tent(0.0, 1.0)")
    r0 = max_radius(f, 1.0)
    assert localization_check(f, 1.0, r0 + 1.0 + g.h).passed
