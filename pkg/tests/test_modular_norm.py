import math

import numpy as np
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from mosmax import (Grid, GridField, PhiFunction, check_embedding, check_holder, check_norm_modular_comparison,
                    check_smallness_certificate, check_tail_certificate, lp_norm, luxemburg_norm, make_field, modular,
                    norm, smallness_threshold, tail_radius)
from mosmax.modular_norm import worst_set_mask

from conftest import double_phase_root, dp_ramp, dp_x

G01 = Grid.from_box(0.0, 1.0, 1 / 64)
values = arrays(np.float64, G01.shape, elements=st.floats(-10, 10, allow_nan=False))


def test_modular_examples(chi64):
    h = chi64.grid.h
    assert abs(modular(PhiFunction.power_law(2), chi64) - 1.0) <= 2 * h
    assert modular(dp_x(), chi64.with_values(np.zeros(chi64.grid.shape))) == 0.0
    assert abs(modular(dp_x(), chi64) - 1.5) <= 2 * h


def test_norm_examples(chi64):
    h = chi64.grid.h
    assert abs(norm(PhiFunction.power_law(2), chi64) - 1.0) <= h
    assert norm(PhiFunction.power_law(2), chi64.with_values(np.zeros(chi64.grid.shape))) == 0.0
    assert abs(norm(dp_x(), chi64) - double_phase_root()) <= 2 * h
    assert math.isclose(double_phase_root(), (math.sqrt(3) - 1) ** -0.5, rel_tol=1e-14)


def test_norm_report_fields(chi64):
    rep = luxemburg_norm(PhiFunction.power_law(2), chi64, tol=1e-10)
    lo, hi = rep.bracket
    assert hi == rep.norm and hi - lo <= 1e-10 * hi and rep.bisection_iters > 0


@given(v=values, p=st.sampled_from([1.0, 1.5, 2.0, 3.0]))
def test_power_law_norm_is_lp_norm(v, p):
    f = GridField(G01, v)
    assert math.isclose(norm(PhiFunction.power_law(p), f), lp_norm(f, p), rel_tol=1e-7, abs_tol=1e-300)


def test_lp_norm_survives_tiny_values():
    f = GridField(G01, np.full(G01.shape, 2.98752248e-236))
    expected = 2.98752248e-236 * (G01.size * G01.cell_volume) ** (1 / 1.5)
    assert math.isclose(lp_norm(f, 1.5), expected, rel_tol=1e-12)
    assert math.isclose(norm(PhiFunction.power_law(1.5), f), expected, rel_tol=1e-7)


@given(v=values, c=st.floats(-20, 20))
def test_homogeneity(v, c):
    f = GridField(G01, v)
    phi = dp_x()
    assert math.isclose(norm(phi, f * c), abs(c) * norm(phi, f), rel_tol=1e-7, abs_tol=1e-12)


@given(v=values, w=values)
def test_triangle_inequality(v, w):
    f, g = GridField(G01, v), GridField(G01, w)
    phi = dp_x()
    assert norm(phi, f + g) <= (norm(phi, f) + norm(phi, g)) * (1 + 1e-7) + 1e-12


@given(v=values, w=values)
def test_lattice_monotone(v, w):
    f = GridField(G01, np.abs(v))
    g = GridField(G01, np.abs(v) + np.abs(w))
    assert norm(dp_x(), f) <= norm(dp_x(), g) * (1 + 1e-7)


def test_unit_ball_modular():
    f = make_field(G01, "gaussian(0.4, 0.2, 3.0)")
    phi = dp_x()
    n = norm(phi, f)
    assert modular(phi, f * (1 / n)) <= 1.0
    assert modular(phi, f * (1 / (n * (1 - 1e-6)))) > 1.0


def test_norm_modular_comparison_examples(chi64):
    pl = PhiFunction.power_law(2)
    r = check_norm_modular_comparison(pl, 2, 1, chi64)
    assert r.passed
    r = check_norm_modular_comparison(pl, 2, 1, chi64 * 2)
    assert r.passed and abs(r.details["norm"] - r.details["upper"]) < 1e-6
    assert check_norm_modular_comparison(dp_x(), 2, 1, chi64).passed


def test_holder_example(chi64):
    r = check_holder(PhiFunction.power_law(2), chi64, chi64)
    d = r.details
    assert r.passed
    assert math.isclose(d["norm_g_conj"], 0.5 * math.sqrt(65 / 64), rel_tol=1e-6)
    assert math.isclose(d["left"], 65 / 64, rel_tol=1e-12)
    assert math.isclose(d["right"], d["left"], rel_tol=1e-6)
    assert check_holder(PhiFunction.power_law(2), chi64 * 0, chi64).passed


def test_holder_random_draws():
    rng = np.random.default_rng(1)
    g = Grid.from_box(0.0, 1.0, 1 / 32)
    pl = PhiFunction.power_law(2)
    for _ in range(100):
        f1 = GridField(g, rng.random(g.shape))
        f2 = GridField(g, rng.random(g.shape))
        assert check_holder(pl, f1, f2).passed


def test_embedding_examples(chi64):
    g = chi64.grid
    fields = [make_field(g, s) for s in ("indicator(0, 1)", "tent(0, 1)", "gaussian(0.3, 0.5)")]
    r = check_embedding(PhiFunction.power_law(2), 2, fields)
    assert r.passed and np.allclose(r.details["ratios"], 1.0, rtol=1e-7)
    r = check_embedding(PhiFunction.double_phase(2, 4, "constant(1.0)"), 2, fields)
    assert r.passed and np.all(r.details["ratios"] <= 1 + 1e-7)
    a = check_embedding(dp_x(), 1, [chi64])
    b = check_embedding(dp_x(), 1, [chi64 * 7.5])
    assert math.isclose(a.details["ratios"][0], b.details["ratios"][0], rel_tol=1e-7)


def test_embedding_refinement_stability():
    g = Grid.from_box(-2, 2, 1 / 32)
    specs = ("tent(0, 1)", "gaussian(0.3, 0.5)", "cos2_bump(0, 1.5)")
    r = check_embedding(dp_ramp(), 1, [make_field(g, s) for s in specs],
                        [make_field(g.refined(), s) for s in specs], g.box)
    assert r.passed and r.details["max_relative_change"] < 0.05


def test_tail_radius_examples(chi64):
    pl = PhiFunction.power_law(2)
    h = chi64.grid.h
    for eps in (0.01, 0.3, 2.0):
        assert tail_radius(pl, chi64, eps) <= 1 + h
    assert tail_radius(pl, chi64 * 0, 0.1) == 0.0
    gauss = make_field(chi64.grid, "gaussian(0.0, 0.7)")
    radii = [tail_radius(pl, gauss, 0.4 / 2 ** k) for k in range(6)]
    assert radii == sorted(radii)


@given(eps=st.floats(0.01, 5.0))
def test_tail_certificate(eps):
    g = Grid.from_box(-4, 4, 1 / 32)
    for spec in ("gaussian(0.5, 0.8, 2.0)", "indicator(-1, 2)"):
        assert check_tail_certificate(dp_ramp(), make_field(g, spec), eps).passed


def test_smallness_examples(chi64):
    pl = PhiFunction.power_law(2)
    g = chi64.grid
    assert smallness_threshold(pl, chi64 * 0, 0.1) == g.size * g.h
    for eps in (0.2, 0.5):
        lam = smallness_threshold(pl, chi64, eps)
        assert abs(lam - eps ** 2 / 4) <= g.h
    gauss = make_field(g, "gaussian(0.0, 0.7)")
    lams = [smallness_threshold(pl, gauss, 0.8 / 2 ** k) for k in range(6)]
    assert lams == sorted(lams, reverse=True)


@given(eps=st.floats(0.05, 3.0))
def test_smallness_certificate(eps):
    g = Grid.from_box(-4, 4, 1 / 32)
    f = make_field(g, "gaussian(0.5, 0.8, 2.0)")
    assert check_smallness_certificate(dp_ramp(), f, eps).passed


def test_smallness_is_greedy_worst_case():
    g = Grid.from_box(0, 1, 1 / 32)
    rng = np.random.default_rng(3)
    f = GridField(g, rng.random(g.shape))
    pl = PhiFunction.power_law(2)
    eps = 0.5
    lam = smallness_threshold(pl, f, eps)
    count = int(round(lam / g.h)) - 1
    worst = norm(pl, f.restricted(worst_set_mask(pl, f, eps, count)))
    for _ in range(200):
        idx = rng.choice(g.size, count, replace=False)
        mask = np.zeros(g.size, dtype=bool)
        mask[idx] = True
        assert norm(pl, f.restricted(mask.reshape(g.shape))) <= worst * (1 + 1e-9)
