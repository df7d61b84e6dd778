"""Modular, Luxemburg norm, and the norm inequalities they are expected to satisfy."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, NumericalError
from .grid_field import GridField
from .phi_core import PhiFunction, SearchSpec, conjugate_phi
from .reports import VerificationReport

DEFAULT_TOL = 1e-8


@dataclass
class NormReport:
    modular: float
    norm: float
    bisection_iters: int
    bracket: tuple
    tolerance: float

    def to_row(self, name: str = "luxemburg_norm") -> dict:
        return {"name": name, "value": repr(float(self.norm)), "tolerance": repr(float(self.tolerance)),
                "passed": "true", "iters": int(self.bisection_iters)}

    def to_dict(self) -> dict:
        return {"kind": "norm", "modular": self.modular, "norm": self.norm,
                "bisection_iters": self.bisection_iters, "bracket": list(self.bracket),
                "tolerance": self.tolerance}


def _scaled_modular(phi: PhiFunction, field: GridField):
    """lam -> rho_phi(field / lam), with the spatial part bound once.

    Zero nodes are dropped: phi(x, 0) = 0 exactly.
    """
    vals = np.abs(field.flat())
    nz = np.nonzero(vals)[0]
    pts = field.grid.points()[nz]
    f = phi.at(pts, field.grid.dim)
    v = vals[nz]
    vol = field.grid.cell_volume

    def rho(lam: float) -> float:
        with np.errstate(over="ignore", divide="ignore"):
            return float(np.sum(f(v / lam)) * vol)

    return rho


def modular(phi: PhiFunction, field: GridField) -> float:
    """Riemann sum h^dim * sum phi(x_i, |f_i|)."""
    if field.is_zero():
        return 0.0
    return _scaled_modular(phi, field)(1.0)


def luxemburg_norm(phi: PhiFunction, field: GridField, tol: float = DEFAULT_TOL,
                   p_guess: float = 1.0, max_steps: int = 2000) -> NormReport:
    """inf{lam > 0 : rho(field / lam) <= 1} by bisection on the monotone map lam -> rho(f/lam).

    The returned norm is the feasible end of a bracket whose relative width is
    at most ``tol``.
    """
    if not tol > 0:
        raise ArgumentError("tol must be positive")
    if field.is_zero():
        return NormReport(0.0, 0.0, 0, (0.0, 0.0), tol)
    rho = _scaled_modular(phi, field)
    grid = field.grid
    measure = grid.size * grid.cell_volume
    hi = max(1.0, grid.cell_volume ** (1 / p_guess) * float(np.max(np.abs(field.values))) * measure ** (1 / p_guess))
    steps = 0
    while not rho(hi) <= 1.0:
        hi *= 2.0
        steps += 1
        if steps > max_steps or not math.isfinite(hi):
            raise NumericalError("luxemburg_norm: upper bracket expansion exhausted", upper=hi)
    lo = hi
    while rho(lo) <= 1.0:
        lo *= 0.5
        steps += 1
        if steps > max_steps or lo == 0.0:
            raise NumericalError("luxemburg_norm: lower bracket shrink exhausted", lower=lo)
    hi = min(hi, 2.0 * lo)
    iters = 0
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if rho(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
        iters += 1
        if iters > max_steps:
            raise NumericalError("luxemburg_norm: bisection did not converge", bracket=(lo, hi))
    return NormReport(rho(1.0), hi, iters, (lo, hi), tol)


def norm(phi: PhiFunction, field: GridField, tol: float = DEFAULT_TOL) -> float:
    return luxemburg_norm(phi, field, tol).norm


def lp_norm(field: GridField, p: float) -> float:
    """Discrete L^p norm (h^dim sum |f_i|^p)^(1/p)."""
    a = np.abs(field.values)
    top = float(np.max(a)) if a.size else 0.0
    if top == 0.0:
        return 0.0
    # factor out the peak so tiny or huge entries do not under/overflow
    return top * float((np.sum((a / top) ** p) * field.grid.cell_volume) ** (1.0 / p))


def check_norm_modular_comparison(phi: PhiFunction, p: float, a: float, field: GridField,
                                  tol: float = 1e-6) -> VerificationReport:
    """min{(rho/a)^(1/p), 1} <= ||f|| <= max{(a rho)^(1/p), 1} for (aInc)_p integrands."""
    rep = luxemburg_norm(phi, field)
    rho, nrm = rep.modular, rep.norm
    lower = min((rho / a) ** (1 / p), 1.0)
    upper = max((a * rho) ** (1 / p), 1.0)
    if field.is_zero():
        lower = 0.0
    scale = tol * max(1.0, nrm)
    slack = min(nrm - lower, upper - nrm)
    return VerificationReport(
        "norm_modular_comparison", slack >= -scale, slack, scale, rep.bisection_iters,
        details={"modular": rho, "norm": nrm, "lower": lower, "upper": upper, "p": p, "a": a})


def check_holder(phi: PhiFunction, f: GridField, g: GridField, search: SearchSpec | None = None,
                 rtol: float = 1e-6) -> VerificationReport:
    """sum |f||g| h^dim <= 2 ||f||_phi ||g||_phi*, with phi* conjugated numerically."""
    left = float(np.sum(np.abs(f.values) * np.abs(g.values)) * f.grid.cell_volume)
    nf = luxemburg_norm(phi, f)
    ng = luxemburg_norm(conjugate_phi(phi, search), g)
    right = 2.0 * nf.norm * ng.norm
    tol = rtol * max(right, left, 1e-300)
    return VerificationReport("holder", left <= right + tol, right - left, tol,
                              nf.bisection_iters + ng.bisection_iters,
                              details={"left": left, "right": right, "norm_f": nf.norm, "norm_g_conj": ng.norm})


def check_embedding(phi: PhiFunction, p: float, fields, refined_fields=None, box=None,
                    bound: float = 1e6, stability: float = 0.2) -> VerificationReport:
    """Ratio ||f||_{L^p} / ||f||_phi over a family, bounded and stable under refinement.

    ``refined_fields`` (same order as ``fields``) are the same generators sampled
    at h/2.  ``box`` optionally restricts every field to a sub-box first.
    """

    def ratios(fs):
        out = []
        for f in fs:
            if box is not None:
                f = f.restricted(box.contains(f.grid.points()).reshape(f.grid.shape))
            if f.is_zero():
                out.append(math.nan)
                continue
            out.append(lp_norm(f, p) / norm(phi, f))
        return np.asarray(out)

    coarse = ratios(fields)
    finite = coarse[np.isfinite(coarse)]
    sup = float(finite.max()) if finite.size else 0.0
    passed = sup <= bound
    details = {"ratios": coarse, "sup_ratio": sup, "p": p, "bound": bound}
    if refined_fields is not None:
        fine = ratios(refined_fields)
        ok = np.isfinite(coarse) & np.isfinite(fine)
        rel = np.abs(fine[ok] / coarse[ok] - 1.0)
        worst = float(rel.max()) if rel.size else 0.0
        details.update(refined_ratios=fine, max_relative_change=worst)
        passed = passed and worst <= stability
    return VerificationReport("embedding", bool(passed), bound - sup, stability, len(coarse), details=details)


def _norm_weights(phi, field, eps):
    vals = np.abs(field.flat())
    pts = field.grid.points()
    w = phi.at(pts, field.grid.dim)(vals / (eps / 2.0)) * field.grid.cell_volume
    return np.where(vals == 0, 0.0, w)


def tail_radius(phi: PhiFunction, field: GridField, eps: float) -> float:
    """Smallest R in {0, h, 2h, ...} with sum over |x| > R of phi(x, |f|/(eps/2)) h^dim <= 1.

    That modular bound makes the norm of the field outside B(0, R) at most
    eps/2, hence below eps.
    """
    if not eps > 0:
        raise ArgumentError("eps must be positive")
    if field.is_zero():
        return 0.0
    grid = field.grid
    w = _norm_weights(phi, field, eps)
    # k_i = least k with |x_i| <= k h
    k = np.ceil(grid.node_norms().reshape(-1) / grid.h - 1e-9).astype(int)
    k = np.maximum(k, 0)
    mass = np.bincount(k, weights=w)
    # tail[k] = sum of weights with k_i > k
    tail = np.concatenate([np.cumsum(mass[::-1])[::-1][1:], [0.0]])
    first = int(np.nonzero(tail <= 1.0)[0][0])
    return first * grid.h


def smallness_threshold(phi: PhiFunction, field: GridField, eps: float) -> float:
    """Measure lam such that every union of fewer than lam / h^dim cells has norm < eps.

    Cells are ordered greedily by phi(x_i, |f_i|/(eps/2)) h^dim, descending; the
    largest k whose top-k weights sum to at most 1 bounds every k-cell set.
    """
    if not eps > 0:
        raise ArgumentError("eps must be positive")
    grid = field.grid
    n = grid.size
    if field.is_zero():
        return n * grid.cell_volume
    w = np.sort(_norm_weights(phi, field, eps))[::-1]
    csum = np.cumsum(w)
    k_star = int(np.searchsorted(csum, 1.0, side="right"))
    return min(k_star + 1, n) * grid.cell_volume


def worst_set_mask(phi: PhiFunction, field: GridField, eps: float, count: int) -> np.ndarray:
    """Mask of the ``count`` cells with the largest greedy weights."""
    w = _norm_weights(phi, field, eps)
    order = np.argsort(-w, kind="stable")[:count]
    mask = np.zeros(field.grid.size, dtype=bool)
    mask[order] = True
    return mask.reshape(field.grid.shape)


def check_tail_certificate(phi: PhiFunction, field: GridField, eps: float) -> VerificationReport:
    """The field cut off outside B(0, tail_radius) has norm below eps."""
    R = tail_radius(phi, field, eps)
    outside = field.outside_ball(R)
    nrm = norm(phi, outside)
    return VerificationReport("tail_radius", nrm < eps, eps - nrm, eps,
                              details={"radius": R, "outside_norm": nrm, "eps": eps})


def check_smallness_certificate(phi: PhiFunction, field: GridField, eps: float) -> VerificationReport:
    """The heaviest set of measure just below the smallness threshold has norm below eps."""
    lam = smallness_threshold(phi, field, eps)
    count = max(int(round(lam / field.grid.cell_volume)) - 1, 0)
    worst = field.restricted(worst_set_mask(phi, field, eps, count))
    nrm = norm(phi, worst)
    return VerificationReport("smallness", nrm < eps, eps - nrm, eps,
                              details={"threshold_measure": lam, "cells": count, "worst_norm": nrm, "eps": eps,
                                       "construction": "greedy worst set by modular weight (discretization choice)"})
