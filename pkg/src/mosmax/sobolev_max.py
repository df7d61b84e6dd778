"""Discrete W^{1,phi}: gradients, Sobolev norms, and the maximal-operator
derivative bound, derivative formula, radius stability and continuity runs."""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np
from scipy import ndimage

from .errors import ArgumentError, NonConvergentFamilyError, UndefinedBoundError
from .grid_field import GENERATORS, GridField, make_field
from .maximal import (_resolve, default_r_max, max_radius, maximal_function, profile_table, radius_table)
from .modular_norm import luxemburg_norm
from .phi_core import PhiFunction
from .reports import VerificationReport

NORM_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SobolevField:
    u: GridField
    grad: tuple

    @property
    def grid(self):
        return self.u.grid


def weak_gradient(u: GridField) -> SobolevField:
    """Central differences inside, one-sided at the box edges."""
    grid = u.grid
    comps = tuple(
        u.with_values(np.gradient(u.values, grid.h, axis=i, edge_order=1)) for i in range(grid.dim)
    )
    return SobolevField(u, comps)


def sobolev_norm(phi: PhiFunction, sf: SobolevField, tol: float = NORM_TOL) -> float:
    """||u||_phi + sum_i ||D_i u||_phi."""
    return sum(sobolev_components(phi, sf, tol))


def sobolev_components(phi: PhiFunction, sf: SobolevField, tol: float = NORM_TOL) -> list:
    return [luxemburg_norm(phi, c, tol).norm for c in (sf.u, *sf.grad)]


def jump_mask(u: GridField, threshold: float = 0.25, width: int = 2) -> np.ndarray:
    """True at nodes within ``width`` nodes of a jump.

    A jump is a neighbor difference larger than ``threshold * max|u|``.
    """
    vals = u.values
    scale = float(np.max(np.abs(vals)))
    mask = np.zeros(vals.shape, dtype=bool)
    if scale == 0:
        return mask
    for axis in range(vals.ndim):
        d = np.abs(np.diff(vals, axis=axis)) > threshold * scale
        hit = np.zeros(vals.shape, dtype=bool)
        lo = [slice(None)] * vals.ndim
        hi = [slice(None)] * vals.ndim
        lo[axis] = slice(0, -1)
        hi[axis] = slice(1, None)
        hit[tuple(lo)] |= d
        hit[tuple(hi)] |= d
        mask |= hit
    if mask.any():
        mask = ndimage.binary_dilation(mask, structure=np.ones((3,) * vals.ndim, dtype=bool), iterations=width)
    return mask


def _support_scale(u: GridField) -> float:
    nz = np.nonzero(u.values)
    if not nz[0].size:
        return math.inf
    ext = [(ax.max() - ax.min()) for ax in nz]
    return max(max(ext) * u.grid.h, u.grid.h)


def default_allowance(sf: SobolevField) -> float:
    """4 h (max|D f| + max|f| / support diameter)."""
    h = sf.grid.h
    dmax = max(float(np.max(np.abs(c.values))) for c in sf.grad)
    fmax = float(np.max(np.abs(sf.u.values)))
    return 4.0 * h * (dmax + fmax / _support_scale(sf.u))


def check_gradient_bound(phi: Optional[PhiFunction], f: SobolevField, r_max: float | None = None,
                         c_h: float | None = None, jump_threshold: float = 0.25) -> VerificationReport:
    """|D_i Mf| <= M(D_i f) + C_h at every node outside the jump mask.

    The reported value is C_h minus the worst excess; ``details`` also holds
    the raw worst excess and, when ``phi`` is given, ||Mf||_{1,phi} / ||f||_{1,phi}.
    """
    u = f.u
    c_h = default_allowance(f) if c_h is None else float(c_h)
    keep = ~jump_mask(u, jump_threshold)
    Mf = maximal_function(u, r_max)
    dM = weak_gradient(Mf)
    worst = -math.inf
    ok_nodes = 0
    n_nodes = 0
    for i, gi in enumerate(f.grad):
        mdf = maximal_function(gi, r_max).values
        excess = (np.abs(dM.grad[i].values) - mdf)[keep]
        if excess.size:
            worst = max(worst, float(excess.max()))
            ok_nodes += int(np.count_nonzero(excess <= c_h))
            n_nodes += excess.size
    if n_nodes == 0:
        worst = 0.0
    details = {"max_excess": worst, "allowance": c_h, "h": u.grid.h,
               "fraction_ok": ok_nodes / n_nodes if n_nodes else 1.0, "masked_nodes": int((~keep).sum())}
    if phi is not None and not u.is_zero():
        nf = sobolev_norm(phi, f)
        nm = sobolev_norm(phi, dM)
        details.update(norm_f=nf, norm_Mf=nm, operator_ratio=nm / nf)
    return VerificationReport("gradient_bound", worst <= c_h, c_h - worst, c_h, n_nodes, details=details)


def check_derivative_formula(phi: Optional[PhiFunction], f: SobolevField, r_max: float | None = None,
                             tol: float | None = None, c_h: float | None = None,
                             jump_threshold: float = 0.25) -> VerificationReport:
    """D_i Mf(x) against the ball average of D_i|f| for every r in the radius set at x
    (r = 0 meaning D_i|f|(x)).

    The pass criterion uses nodes whose radius set selects a single ball
    ("unique strict argmax"); the deviation over all radii at all unmasked
    nodes is reported alongside.
    """
    u = f.u
    grid = u.grid
    c_h = default_allowance(f) if c_h is None else float(c_h)
    _, K = _resolve(grid, r_max)
    keep = ~jump_mask(u, jump_threshold)
    Mf = maximal_function(u, r_max)
    dM = weak_gradient(Mf)
    dabs = weak_gradient(u.abs())
    table = radius_table(u, keep, r_max, tol)
    stable = _stencil_stable(table, keep, 2.0 * grid.h)
    unique = table.unique_ball() & stable
    dev_all = 0.0
    dev_unique = 0.0
    for i in range(grid.dim):
        avg = profile_table(dabs.grad[i].values, keep, K)
        lhs = dM.grad[i].values.reshape(-1)[table.nodes]
        diff = np.where(table.members, np.abs(avg - lhs[None, :]), 0.0).max(axis=0)
        if diff.size:
            dev_all = max(dev_all, float(diff.max()))
            if unique.any():
                dev_unique = max(dev_unique, float(diff[unique].max()))
    return VerificationReport("derivative_formula", dev_unique <= c_h, c_h - dev_unique, c_h,
                              int(table.nodes.size),
                              details={"max_deviation_unique": dev_unique, "radius_jump_nodes": int((~stable).sum()), "max_deviation_all": dev_all,
                                       "unique_nodes": int(unique.sum()), "nodes": int(table.nodes.size),
                                       "allowance": c_h, "h": grid.h})


def _stencil_stable(table, keep: np.ndarray, slack: float, rel: float = 0.25) -> np.ndarray:
    """Per table node: every stencil neighbor is unmasked and its radius set spans
    the same range up to ``slack + rel * r``.  Where the maximizing radius jumps,
    Mf has a kink and a central difference straddling it matches neither side."""
    grid = table.grid
    lo = np.full(grid.shape, np.nan)
    hi = np.full(grid.shape, np.nan)
    r = table.radii[:, None]
    lo.reshape(-1)[table.nodes] = np.where(table.members, r, np.inf).min(axis=0)
    hi.reshape(-1)[table.nodes] = np.where(table.members, r, -np.inf).max(axis=0)
    ok = np.ones(grid.shape, dtype=bool)
    for axis in range(grid.dim):
        for step in (-1, 1):
            for arr in (lo, hi):
                nb = np.roll(arr, step, axis=axis)
                edge = [slice(None)] * grid.dim
                edge[axis] = 0 if step == 1 else -1
                nb[tuple(edge)] = arr[tuple(edge)]
                with np.errstate(invalid="ignore"):
                    ok &= np.abs(nb - arr) <= slack + rel * np.maximum(np.abs(nb), np.abs(arr))
    return ok.reshape(-1)[table.nodes]


def radius_stability(f: GridField, f_m: GridField, R: float, lam: float, r_max: float | None = None,
                     tol: float | None = None) -> float:
    """Measure of nodes in B(0, R) where some radius for f_m lies farther than lam
    from every radius for f."""
    if not lam > 0:
        raise ArgumentError("lam must be positive")
    grid = f.grid
    mask = grid.node_norms() <= R * (1 + 1e-12)
    tf = radius_table(f, mask, r_max, tol)
    tm = radius_table(f_m, mask, r_max, tol)
    return _stability_measure(tf, tm, lam)


def _stability_measure(tf, tm, lam):
    radii = tf.radii
    # distance from each radius to the nearest member of tf's set, per node
    big = np.where(tf.members, radii[:, None], np.inf)
    # nearest member below/above via running max/min over the sorted radius axis
    below = np.maximum.accumulate(np.where(tf.members, radii[:, None], -np.inf), axis=0)
    above = np.minimum.accumulate(big[::-1], axis=0)[::-1]
    dist = np.minimum(radii[:, None] - below, above - radii[:, None])
    bad = np.any(tm.members & (dist > lam * (1 + 1e-12)), axis=0)
    return float(np.count_nonzero(bad)) * tf.grid.cell_volume


def uniform_radius_bound_check(f: GridField, sequence, R: float, r_max: float | None = None,
                               tol: float | None = None, window: float | None = None,
                               tail_fraction: float = 0.5) -> VerificationReport:
    """One bound for the radius sets of every f_m on B(0, R).

    Passes when every R0(f_m) is finite and the last ``tail_fraction`` of the
    sequence stays within ``window`` (default max(4h, 0.1 R0(f))) of R0(f).
    """
    if f.is_zero():
        raise UndefinedBoundError("f must be nonzero")
    bounds = []
    for k, fm in enumerate(sequence):
        if fm.is_zero():
            raise UndefinedBoundError(f"sequence member {k} is zero")
        bounds.append(max_radius(fm, R, r_max, tol))
    r0 = max_radius(f, R, r_max, tol)
    bounds = np.asarray(bounds)
    window = max(4 * f.grid.h, 0.1 * r0) if window is None else float(window)
    start = int(len(bounds) * (1 - tail_fraction))
    tail = bounds[start:]
    spread = float(np.max(np.abs(tail - r0))) if tail.size else 0.0
    sup = float(bounds.max()) if bounds.size else r0
    passed = bool(np.all(np.isfinite(bounds))) and spread <= window
    return VerificationReport("uniform_radius_bound", passed, window - spread, window, len(bounds),
                              details={"bounds": bounds, "R0_f": r0, "sup": max(sup, r0), "tail_spread": spread})


# ---------------------------------------------------------------------------
# continuity experiment


@dataclass(frozen=True)
class PerturbationFamily:
    """Grid-representable perturbations f_m = f + d / m.

    ``scale``: d = f.  ``bump``: d = C^1 cos^2 bump at ``center`` with
    half-width ``width``.  ``noise``: seeded white noise, Gaussian-smoothed
    with std ``smoothing``, windowed by a C^1 bump of half-width ``width``.
    """

    kind: str
    center: float = 0.0
    width: float = 1.0
    amplitude: float = 1.0
    smoothing: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("scale", "bump", "noise"):
            raise ArgumentError(f"unknown perturbation kind {self.kind!r}")

    @property
    def name(self) -> str:
        if self.kind == "scale":
            return "scale"
        if self.kind == "bump":
            return f"bump({self.center:g},{self.width:g},{self.amplitude:g})"
        return f"noise({self.width:g},{self.smoothing:g},{self.amplitude:g},seed={self.seed})"

    def direction(self, f: GridField) -> GridField:
        grid = f.grid
        if self.kind == "scale":
            return f * self.amplitude
        if self.kind == "bump":
            return make_field(grid, GENERATORS["cos2_bump"](self.center, self.width, self.amplitude))
        rng = np.random.default_rng(self.seed)
        noise = rng.standard_normal(grid.shape)
        smooth = ndimage.gaussian_filter(noise, self.smoothing / grid.h, mode="constant")
        smooth /= max(float(np.max(np.abs(smooth))), 1e-300)
        window = make_field(grid, GENERATORS["cos2_bump"](self.center, self.width)).values
        return f.with_values(self.amplitude * smooth * window)

    def member(self, f: GridField, m: int, direction: GridField | None = None) -> GridField:
        d = self.direction(f) if direction is None else direction
        return f + d / m


@dataclass
class TraceRow:
    m: int
    input_gap: float
    output_gap: float
    input_components: list
    output_components: list
    stability_measure: float
    oscillation_diag: float


@dataclass
class ContinuityTrace:
    family: str
    rows: list = dc_field(default_factory=list)
    R: float = 0.0
    delta0: float = 0.0
    eps: float = 0.0
    lam: float = 0.0
    c_delta_measure: float = 0.0

    CSV_COLUMNS = ("m", "input_gap", "output_gap", "stability_measure", "oscillation_diag")

    def csv_rows(self):
        return [{"m": r.m, "input_gap": repr(float(r.input_gap)), "output_gap": repr(float(r.output_gap)),
                 "stability_measure": repr(float(r.stability_measure)),
                 "oscillation_diag": repr(float(r.oscillation_diag))} for r in self.rows]

    def to_dict(self):
        from .reports import jsonable

        return jsonable({"kind": "continuity", "family": self.family, "R": self.R, "delta0": self.delta0,
                         "eps": self.eps, "lambda": self.lam, "c_delta_measure": self.c_delta_measure,
                         "rows": [r.__dict__ for r in self.rows]})

    @property
    def output_ratio(self) -> float:
        first = self.rows[0].output_gap
        return self.rows[-1].output_gap / first if first > 0 else 0.0


def oscillation_diagnostic(f: SobolevField, R: float, delta0: float, threshold: float,
                           r_max: float | None = None) -> tuple:
    """sup over x in B(0, R) of the oscillation of r -> avg_{B(x,r)} D_i f across
    radius windows of width delta0, and the measure of nodes whose oscillation
    exceeds ``threshold``."""
    grid = f.grid
    _, K = _resolve(grid, r_max)
    mask = grid.node_norms() <= R * (1 + 1e-12)
    w = max(1, int(math.floor(delta0 / (0.5 * grid.h) + 1e-9)))
    osc = np.zeros(int(mask.sum()))
    for g in f.grad:
        u = profile_table(g.values, mask, K)
        hi = ndimage.maximum_filter1d(u, size=w + 1, axis=0, mode="nearest", origin=-(w // 2))
        lo = ndimage.minimum_filter1d(u, size=w + 1, axis=0, mode="nearest", origin=-(w // 2))
        osc = np.maximum(osc, (hi - lo).max(axis=0))
    sup = float(osc.max()) if osc.size else 0.0
    return sup, float(np.count_nonzero(osc > threshold)) * grid.cell_volume


def continuity_experiment(phi: PhiFunction, f: SobolevField, perturbations, M_steps: int = 32,
                          r_max: float | None = None, R: float | None = None, lam: float | None = None,
                          delta0: float | None = None, eps: float = 0.1, norm_tol: float = 1e-6,
                          steps=None) -> list:
    """For each perturbation family, track ||f_m - f||_{1,phi}, ||Mf_m - Mf||_{1,phi}
    and the radius-set stability measure for m = 1..M_steps (or the given ``steps``)."""
    u = f.u
    grid = u.grid
    r_max = default_r_max(grid) if r_max is None else r_max
    R = 0.5 * min(b - a for a, b in zip(grid.origin, grid.upper)) if R is None else R
    lam = 4 * grid.h if lam is None else lam
    delta0 = 4 * grid.h if delta0 is None else delta0
    steps = list(range(1, M_steps + 1)) if steps is None else list(steps)
    Mf = maximal_function(u, r_max)
    chi = u.with_values((grid.node_norms() <= R * (1 + 1e-12)).astype(float))
    threshold = eps / luxemburg_norm(phi, chi, norm_tol).norm
    osc, c_delta = oscillation_diagnostic(f, R, delta0, threshold, r_max)
    mask = grid.node_norms() <= R * (1 + 1e-12)
    base_table = radius_table(u, mask, r_max)
    traces = []
    for fam in perturbations:
        d = fam.direction(u)
        trace = ContinuityTrace(fam.name, R=R, delta0=delta0, eps=eps, lam=lam, c_delta_measure=c_delta)
        for m in steps:
            fm = fam.member(u, m, d)
            gin = weak_gradient(fm - u)
            cin = sobolev_components(phi, gin, norm_tol)
            Mfm = maximal_function(fm, r_max)
            gout = weak_gradient(Mfm - Mf)
            cout = sobolev_components(phi, gout, norm_tol)
            stab = _stability_measure(base_table, radius_table(fm, mask, r_max), lam)
            trace.rows.append(TraceRow(m, sum(cin), sum(cout), cin, cout, stab, osc))
        gaps = [r.input_gap for r in trace.rows]
        if any(b >= a for a, b in zip(gaps, gaps[1:])):
            raise NonConvergentFamilyError(f"input gaps of {fam.name} are not strictly decreasing", gaps)
        traces.append(trace)
    return traces
