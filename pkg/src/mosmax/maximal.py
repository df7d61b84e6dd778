"""Discrete centered Hardy-Littlewood maximal operator and radius sets.

The sup over r > 0 becomes a max over radii k h / 2 (k = 1..K) plus the
0-marker whose value is |f(x)|.  Ball sums are accumulated ring by ring in a
fixed offset order, so the vectorized sweep, the single-node profile and the
naive per-node loop all perform the same floating-point additions and agree
bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import ArgumentError, PreconditionError, UndefinedBoundError
from .grid_field import Ball, Grid, GridField, ZERO_MARKER, ball_average, n_radii
from .modular_norm import luxemburg_norm
from .phi_core import DecayConstants, PhiFunction, SampleSpec, decay_constants
from .reports import VerificationReport

RELATIVE_TIE_TOL = 1e-9


@lru_cache(maxsize=32)
def ring_offsets(dim: int, K: int):
    """Lattice offsets with |o| <= K/2, sorted by ring k = ceil(2|o|) then lexicographically.

    Returns ``(offsets, ring, counts)`` where ``counts[k]`` is the number of
    offsets in the ball of radius k h / 2 (``counts[0] = 1`` for the marker).
    """
    m = K // 2
    rng = np.arange(-m, m + 1)
    if dim == 1:
        offs = rng[:, None]
    else:
        a, b = np.meshgrid(rng, rng, indexing="ij")
        offs = np.stack([a.ravel(), b.ravel()], axis=-1)
    n4 = 4 * np.sum(offs ** 2, axis=-1)
    keep = n4 <= K * K
    offs, n4 = offs[keep], n4[keep]
    ring = np.array([1 if v == 0 else math.isqrt(int(v) - 1) + 1 for v in n4], dtype=int)
    order = np.lexsort(tuple(offs[:, d] for d in reversed(range(dim))) + (ring,))
    offs, ring = offs[order], ring[order]
    counts = np.searchsorted(ring, np.arange(0, K + 1), side="right")
    counts[0] = 1
    offs.setflags(write=False)
    ring.setflags(write=False)
    counts.setflags(write=False)
    return offs, ring, counts


def default_r_max(grid: Grid) -> float:
    """Box diameter: a ball this large around any node covers the whole box,
    and larger balls only add zero nodes, so the scan is lossless."""
    return max(grid.diameter, grid.h)


def _sweep(values: np.ndarray, K: int):
    """Yield (k, averages over B(x, k h/2) at every node) for k = 0..K (k = 0: marker)."""
    dim = values.ndim
    offs, ring, counts = ring_offsets(dim, K)
    P = K // 2
    padded = np.pad(values, P)
    running = np.zeros(values.shape)
    yield 0, values.astype(float, copy=True)
    idx, n = 0, len(ring)
    shape = values.shape
    for k in range(1, K + 1):
        while idx < n and ring[idx] == k:
            o = offs[idx]
            sl = tuple(slice(P + int(o[d]), P + int(o[d]) + shape[d]) for d in range(dim))
            running += padded[sl]
            idx += 1
        yield k, running / counts[k]


def _resolve(grid: Grid, r_max):
    r_max = default_r_max(grid) if r_max is None else float(r_max)
    if r_max < grid.h * (1 - 1e-12):
        raise ArgumentError(f"r_max must be >= h = {grid.h}")
    return r_max, n_radii(grid, r_max)


def radii_for(grid: Grid, K: int) -> np.ndarray:
    return np.concatenate([[ZERO_MARKER], 0.5 * grid.h * np.arange(1, K + 1)])


def maximal_function(field: GridField, r_max: float | None = None) -> GridField:
    """Mf at every node: max over candidate radii of the ball average of |f|."""
    _, K = _resolve(field.grid, r_max)
    best = None
    for _, avg in _sweep(np.abs(field.values), K):
        best = avg if best is None else np.maximum(best, avg)
    return field.with_values(best)


def maximal_function_naive(field: GridField, r_max: float | None = None) -> GridField:
    """Per-node reference loop; bit-identical to ``maximal_function``. Slow."""
    grid = field.grid
    _, K = _resolve(grid, r_max)
    offs, ring, counts = ring_offsets(grid.dim, K)
    vals = np.abs(field.values)
    ext = grid.extents
    out = np.empty(grid.shape)
    for node in np.ndindex(*ext):
        best = float(vals[node])
        s = 0.0
        j = 0
        for k in range(1, K + 1):
            while j < len(ring) and ring[j] == k:
                y = tuple(int(node[d] + offs[j][d]) for d in range(grid.dim))
                inside = all(0 <= y[d] < ext[d] for d in range(grid.dim))
                s += float(vals[y]) if inside else 0.0
                j += 1
            best = max(best, s / int(counts[k]))
        out[node] = best
    return field.with_values(out)


def node_profile(values: np.ndarray, node, K: int) -> np.ndarray:
    """Averages at one node for k = 0..K, bit-identical to the sweep."""
    dim = values.ndim
    offs, ring, counts = ring_offsets(dim, K)
    node = np.atleast_1d(node)
    y = offs + node
    inside = np.all((y >= 0) & (y < np.asarray(values.shape)), axis=-1)
    gathered = np.zeros(len(offs))
    gathered[inside] = values[tuple(y[inside, d] for d in range(dim))]
    csum = np.add.accumulate(gathered)
    prof = np.empty(K + 1)
    prof[0] = values[tuple(node)]
    prof[1:] = csum[counts[1:] - 1] / counts[1:]
    return prof


def profile_table(values: np.ndarray, mask: np.ndarray, K: int) -> np.ndarray:
    """Averages (k = 0..K) at the nodes selected by ``mask``: shape (K + 1, n_selected)."""
    flat_idx = np.flatnonzero(mask)
    out = np.empty((K + 1, flat_idx.size))
    for k, avg in _sweep(values, K):
        out[k] = avg.reshape(-1)[flat_idx]
    return out


@dataclass
class RadiusSet:
    """Near-optimal averaging radii at one node (0.0 stands for the r -> 0 marker)."""

    point: tuple
    index: tuple
    radii: np.ndarray
    tol: float
    max_value: float
    counts: np.ndarray = dc_field(default=None)

    @property
    def unique_ball(self) -> bool:
        """All listed radii select the same set of lattice nodes."""
        return len(np.unique(self.counts)) == 1

    def __len__(self):
        return len(self.radii)

    def __contains__(self, r):
        return bool(np.any(np.isclose(self.radii, r, rtol=0, atol=1e-12)))


def _tolerances(maxval, tol):
    if tol is None:
        return RELATIVE_TIE_TOL * maxval
    return np.full_like(maxval, float(tol))


@dataclass
class RadiusTable:
    """Radius sets for many nodes at once."""

    grid: Grid
    radii: np.ndarray
    counts: np.ndarray
    nodes: np.ndarray          # flat indices
    profile: np.ndarray        # (K+1, n)
    max_value: np.ndarray      # (n,)
    members: np.ndarray        # (K+1, n) bool
    tol: np.ndarray            # (n,)

    def max_radius(self) -> np.ndarray:
        r = np.where(self.members, self.radii[:, None], -np.inf)
        return r.max(axis=0)

    def radius_set(self, j: int) -> RadiusSet:
        sel = self.members[:, j]
        idx = np.unravel_index(int(self.nodes[j]), self.grid.shape)
        return RadiusSet(self.grid.node_point(idx), tuple(int(i) for i in idx), self.radii[sel],
                         float(self.tol[j]), float(self.max_value[j]), self.counts[sel])

    def unique_ball(self) -> np.ndarray:
        c = np.where(self.members, self.counts[:, None], -1)
        hi = c.max(axis=0)
        lo = np.where(self.members, self.counts[:, None], np.iinfo(np.int64).max).min(axis=0)
        return hi == lo


def radius_table(field: GridField, mask=None, r_max: float | None = None, tol: float | None = None) -> RadiusTable:
    grid = field.grid
    _, K = _resolve(grid, r_max)
    if mask is None:
        mask = np.ones(grid.shape, dtype=bool)
    prof = profile_table(np.abs(field.values), mask, K)
    maxval = prof.max(axis=0)
    tols = _tolerances(maxval, tol)
    members = prof >= maxval - tols
    _, _, counts = ring_offsets(grid.dim, K)
    return RadiusTable(grid, radii_for(grid, K), np.asarray(counts), np.flatnonzero(mask), prof, maxval,
                       members, tols)


def radius_set(field: GridField, x, r_max: float | None = None, tol: float | None = None) -> RadiusSet:
    """Radii within ``tol`` of Mf at node ``x`` (an index, or a tuple of indices in 2-D).

    Default tolerance is 1e-9 * Mf(x); the set is never empty.
    """
    grid = field.grid
    _, K = _resolve(grid, r_max)
    index = tuple(int(i) for i in np.atleast_1d(x))
    prof = node_profile(np.abs(field.values), index, K)
    mx = float(prof.max())
    t = RELATIVE_TIE_TOL * mx if tol is None else float(tol)
    sel = prof >= mx - t
    _, _, counts = ring_offsets(grid.dim, K)
    return RadiusSet(grid.node_point(index), index, radii_for(grid, K)[sel], t, mx, np.asarray(counts)[sel])


# ---------------------------------------------------------------------------
# quantitative radius and decay bounds


def average_decay_bound(phi: PhiFunction, field: GridField, p: float, a: float, beta: float, ball: Ball,
                        measure: str = "continuum", rtol: float = 1e-9,
                        norm_value: float | None = None) -> VerificationReport:
    """Average of |f| over a ball of measure >= 1 against (2 a^(1/p')/beta) ||f||_phi |B|^(1/p' - 1).

    ``p`` is an (aDec) exponent of phi; ``a`` and ``beta`` are the (aInc)_{p'}
    and (A0) constants of its conjugate.  The left side is always the discrete
    average; ``measure`` picks continuum or discrete |B| for the right side.
    """
    if not p > 1:
        raise ArgumentError("p must exceed 1")
    p_conj = p / (p - 1.0)
    if measure == "continuum":
        meas = ball.measure
    else:
        meas = _discrete_ball_measure(field.grid, ball.radius)
    details = {"measure": meas, "measure_kind": measure, "left_kind": "discrete average"}
    if meas < 1.0:
        return VerificationReport("average_decay", True, math.nan, rtol, skipped=True,
                                  details={**details, "reason": "|B| < 1"})
    left = ball_average(field.abs(), ball)
    nrm = luxemburg_norm(phi, field).norm if norm_value is None else norm_value
    right = 2.0 * a ** (1.0 / p_conj) / beta * nrm * meas ** (1.0 / p_conj - 1.0)
    tol = rtol * max(right, 1e-300)
    return VerificationReport("average_decay", left <= right + tol, right - left, tol,
                              details={**details, "left": left, "right": right, "norm": nrm,
                                       "p": p, "a": a, "beta": beta})


def _discrete_ball_measure(grid: Grid, r: float) -> float:
    m = int(math.floor(r / grid.h + 1e-9))
    rng = np.arange(-m, m + 1)
    if grid.dim == 1:
        n = rng.size
    else:
        a, b = np.meshgrid(rng, rng, indexing="ij")
        n = int(np.count_nonzero((a ** 2 + b ** 2) * grid.h ** 2 <= (r * (1 + 1e-12)) ** 2))
    return n * grid.cell_volume


def _ball_volume_radius(dim: int, volume: float) -> float:
    return volume / 2.0 if dim == 1 else math.sqrt(volume / math.pi)


@dataclass
class RadiusBound:
    """Largest near-optimal radius over nodes in B(0, R) with the a-priori cap it must respect."""

    r0: float
    apriori: float
    lower_bound: float
    r_hat: float
    r_max: float
    scan_complete: bool
    norm: float
    constants: Optional[DecayConstants] = None

    @property
    def within(self) -> bool:
        return self.r0 <= self.apriori

    def __float__(self):
        return float(self.r0)


def support_lower_bound(field: GridField, R: float):
    """(R_hat, L): R_hat = max(R, first grid radius carrying mass) and
    L = sum_{|y| <= R_hat} |f| / #(lattice ball of radius 2 R_hat), a lower bound
    for Mf on B(0, R)."""
    grid = field.grid
    norms = grid.node_norms()
    absf = np.abs(field.values)
    k = np.ceil(norms / grid.h - 1e-9).astype(int)
    nz = absf > 0
    if not nz.any():
        raise UndefinedBoundError("field is identically zero")
    r_tilde = float(k[nz].min()) * grid.h
    r_hat = max(float(R), r_tilde)
    mass = float(np.sum(absf[norms <= r_hat * (1 + 1e-12)]))
    count = _discrete_ball_measure(grid, 2 * r_hat) / grid.cell_volume
    return r_hat, mass / count


def apriori_radius(field: GridField, R: float, constants: DecayConstants, norm_value: float) -> tuple:
    """Radius beyond which the decay bound falls below the support lower bound.

    Returns ``(radius, L, R_hat)``.  The continuum radius is padded by h so the
    discrete ball measure is at least the threshold measure.
    """
    r_hat, L = support_lower_bound(field, R)
    volume = max(1.0, (constants.factor * norm_value / L) ** constants.p)
    return _ball_volume_radius(field.grid.dim, volume) + field.grid.h, L, r_hat


def _scan_max_radius(field: GridField, R: float, r_max: float, tol, limit: float):
    """Max radius in the radius sets over nodes in B(0, R), enlarging r_max until
    radii beyond it provably cannot qualify (or ``limit`` is reached)."""
    grid = field.grid
    mask = grid.node_norms() <= R * (1 + 1e-12)
    total = float(np.sum(np.abs(field.values)))
    while True:
        table = radius_table(field, mask, r_max, tol)
        K = len(table.radii) - 1
        # any ball beyond r_max averages at most total / count_K
        tail_bound = total / table.counts[K]
        complete = bool(np.all(tail_bound < table.max_value - table.tol))
        if complete or r_max >= limit:
            return float(table.max_radius().max()), r_max, complete, table
        r_max = min(2 * r_max, limit)


def radius_upper_bound(phi: PhiFunction, field: GridField, R: float, r_max: float | None = None,
                       tol: float | None = None, constants: DecayConstants | None = None,
                       samples: SampleSpec | None = None) -> RadiusBound:
    """R0 = max over x in B(0, R) of max(radius_set(x)), checked against the a-priori bound."""
    if not R > 0:
        raise ArgumentError("R must be positive")
    if field.is_zero():
        raise UndefinedBoundError("radius bound is undefined for the zero field")
    grid = field.grid
    if constants is None:
        constants = decay_constants(phi, samples or SampleSpec.from_grid(grid))
    nrm = luxemburg_norm(phi, field).norm
    apriori, L, r_hat = apriori_radius(field, R, constants, nrm)
    r_max = default_r_max(grid) if r_max is None else float(r_max)
    r0, used, complete, _ = _scan_max_radius(field, R, r_max, tol, max(apriori, r_max))
    return RadiusBound(r0, apriori, L, r_hat, used, complete, nrm, constants)


def max_radius(field: GridField, R: float, r_max: float | None = None, tol: float | None = None) -> float:
    """R0 from the scan alone (no integrand needed)."""
    if field.is_zero():
        raise UndefinedBoundError("radius bound is undefined for the zero field")
    r_max = default_r_max(field.grid) if r_max is None else float(r_max)
    return _scan_max_radius(field, R, r_max, tol, r_max)[0]


def localization_check(field: GridField, R: float, frak_R: float, tol: float | None = None,
                       r_max: float | None = None, g: GridField | None = None) -> VerificationReport:
    """Cut the field off outside B(0, frak_R) and confirm Mf and the radius sets
    are unchanged, bit for bit, on B(0, R).

    ``g`` replaces the default cut-off; it must equal f on B(0, frak_R) and be
    dominated by |f| outside.
    """
    grid = field.grid
    r0 = max_radius(field, R, r_max, tol)
    if not frak_R > r0 + R:
        raise PreconditionError(f"need frak_R > R0 + R = {r0 + R}, got {frak_R}")
    norms = grid.node_norms()
    inner = norms <= frak_R * (1 + 1e-12)
    if g is None:
        g = field.inside_ball(frak_R)
    elif not (np.array_equal(g.values[inner], field.values[inner])
              and np.all(np.abs(g.values[~inner]) <= np.abs(field.values[~inner]))):
        raise PreconditionError("g must equal f on B(0, frak_R) and satisfy |g| <= |f| outside")
    mask = norms <= R * (1 + 1e-12)
    tf = radius_table(field, mask, r_max, tol)
    tg = radius_table(g, mask, r_max, tol)
    same_max = bool(np.array_equal(tf.max_value, tg.max_value))
    same_sets = bool(np.array_equal(tf.members, tg.members))
    mf, mg = maximal_function(field, r_max), maximal_function(g, r_max)
    dominated = bool(np.all(mg.values <= mf.values))
    diff = float(np.max(np.abs(tf.max_value - tg.max_value))) if tf.max_value.size else 0.0
    return VerificationReport("localization", same_max and same_sets and dominated, diff, 0.0,
                              details={"R0": r0, "R": R, "frak_R": frak_R, "nodes": int(mask.sum()),
                                       "equal_max": same_max, "equal_radius_sets": same_sets,
                                       "Mg_le_Mf_everywhere": dominated})
