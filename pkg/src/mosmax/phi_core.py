"""Generalized Orlicz integrands phi(x, t) and sampled checks of their structural conditions.

Four families are supported, all continuous and strictly increasing in t:

* ``power_law``          phi(t) = t**p
* ``autonomous``         phi(t) = profile(t), default t**p * log(e + t)
* ``variable_exponent``  phi(x, t) = t**p(x)
* ``double_phase``       phi(x, t) = t**p + a(x) t**q

plus ``custom`` for user-supplied callables (the numerically conjugated
integrand is one of these).

Condition checks are sampled: ``passed`` means that no violation was found on
the declared sample set, and each report carries the best constant seen.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import spatial
from .errors import ArgumentError, DomainError, NumericalError, UnboundedConjugateError

FAMILIES = ("power_law", "autonomous", "variable_exponent", "double_phase", "custom")


@dataclass(frozen=True, eq=False)
class Box:
    """Axis-aligned box; infinite bounds are allowed."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        lo = tuple(float(v) for v in np.atleast_1d(self.lo))
        hi = tuple(float(v) for v in np.atleast_1d(self.hi))
        if len(lo) != len(hi) or len(lo) not in (1, 2):
            raise ArgumentError(f"box bounds must have matching dimension 1 or 2, got {lo}, {hi}")
        if any(a > b for a, b in zip(lo, hi)):
            raise ArgumentError(f"empty box {lo} .. {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def whole(cls, dim: int = 1) -> "Box":
        return cls((-math.inf,) * dim, (math.inf,) * dim)

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def measure(self) -> float:
        return float(np.prod([b - a for a, b in zip(self.lo, self.hi)]))

    def contains(self, points) -> np.ndarray:
        pts = as_points(points, self.dim)
        if self.dim == 1:
            return (pts >= self.lo[0]) & (pts <= self.hi[0])
        lo, hi = np.asarray(self.lo), np.asarray(self.hi)
        return np.all((pts >= lo) & (pts <= hi), axis=-1)


def as_points(x, dim: int = 1) -> np.ndarray:
    """Normalize to the package point convention: (N,) in 1-D, (N, 2) in 2-D."""
    x = np.asarray(x, dtype=float)
    if dim == 1:
        return x.reshape(-1)
    return x.reshape(-1, dim)


def _lead(v: np.ndarray, t: np.ndarray) -> np.ndarray:
    # align a per-point array with the leading axis of t
    if t.ndim == 0:
        return v
    return v.reshape(v.shape + (1,) * (t.ndim - 1))


def _power_log(p):
    def profile(t):
        return np.power(t, p) * np.log(math.e + t)

    return profile


@dataclass(frozen=True, eq=False)
class PhiFunction:
    """A generalized Orlicz integrand; build instances with the classmethods.

    ``at(points)`` binds the spatial part once and returns ``t -> phi(x, t)``
    where ``t`` is a scalar or an array whose leading axis runs over points.
    """

    family: str
    p: Optional[float] = None
    q: Optional[float] = None
    p_field: Optional[Callable] = None
    a_field: Optional[Callable] = None
    profile: Optional[Callable] = None
    domain: Optional[Box] = None
    label: str = ""

    @classmethod
    def power_law(cls, p: float, domain: Box | None = None) -> "PhiFunction":
        if not p >= 1:
            raise ArgumentError(f"power law needs p >= 1, got {p}")
        return cls("power_law", p=float(p), domain=domain, label=f"t^{p:g}")

    @classmethod
    def autonomous(cls, p: float, profile: Callable | None = None, domain: Box | None = None,
                   label: str = "") -> "PhiFunction":
        if not p >= 1:
            raise ArgumentError(f"autonomous family needs p >= 1, got {p}")
        profile = profile or _power_log(float(p))
        return cls("autonomous", p=float(p), profile=profile, domain=domain,
                   label=label or f"t^{p:g} log(e+t)")

    @classmethod
    def variable_exponent(cls, p_field, domain: Box | None = None) -> "PhiFunction":
        p_field = spatial.from_spec(p_field)
        return cls("variable_exponent", p_field=p_field, domain=domain, label=f"t^p(x), p={p_field}")

    @classmethod
    def double_phase(cls, p: float, q: float, a_field, domain: Box | None = None) -> "PhiFunction":
        if not (q > p >= 1):
            raise ArgumentError(f"double phase needs q > p >= 1, got p={p}, q={q}")
        a_field = spatial.from_spec(a_field)
        return cls("double_phase", p=float(p), q=float(q), a_field=a_field, domain=domain,
                   label=f"t^{p:g} + a(x) t^{q:g}, a={a_field}")

    @classmethod
    def custom(cls, func: Callable, domain: Box | None = None, label: str = "custom") -> "PhiFunction":
        """``func(points, t)`` must follow the ``at`` broadcasting convention."""
        return cls("custom", profile=func, domain=domain, label=label)

    @property
    def dim(self) -> int:
        return self.domain.dim if self.domain is not None else 1

    def _points(self, points, dim=None) -> np.ndarray:
        dim = dim or self.dim
        pts = as_points(points, dim)
        if self.domain is not None and not np.all(self.domain.contains(pts)):
            bad = pts[~self.domain.contains(pts)][0]
            raise DomainError(f"point {bad} outside domain {self.domain.lo}..{self.domain.hi}")
        return pts

    def at(self, points, dim: int | None = None) -> Callable[[np.ndarray], np.ndarray]:
        pts = self._points(points, dim)
        fam = self.family
        if fam == "power_law":
            p = self.p
            return lambda t: _safe(np.power, np.asarray(t, dtype=float), p)
        if fam == "autonomous":
            prof = self.profile
            return lambda t: _safe1(prof, np.asarray(t, dtype=float))
        if fam == "variable_exponent":
            pv = np.asarray(self.p_field(pts), dtype=float)
            if np.any(pv < 1):
                raise ArgumentError("variable exponent must satisfy p(x) >= 1")

            def varexp(t):
                t = np.asarray(t, dtype=float)
                return _safe(np.power, t, _lead(pv, t))

            return varexp
        if fam == "double_phase":
            av = np.asarray(self.a_field(pts), dtype=float)
            if np.any(av < 0):
                raise ArgumentError("double phase weight must satisfy a(x) >= 0")
            p, q = self.p, self.q

            def dphase(t):
                t = np.asarray(t, dtype=float)
                with np.errstate(over="ignore", invalid="ignore"):
                    return np.power(t, p) + _lead(av, t) * np.power(t, q)

            return dphase
        if fam == "custom":
            func = self.profile
            return lambda t: np.asarray(func(pts, np.asarray(t, dtype=float)), dtype=float)
        raise ArgumentError(f"unknown family {fam!r}")

    def evaluate(self, points, t) -> np.ndarray:
        return self.at(points)(t)

    def __str__(self):
        return self.label or self.family


def _safe(fn, *args):
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        return fn(*args)


def _safe1(fn, t):
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        return np.asarray(fn(t), dtype=float)


def eval_phi(phi: PhiFunction, x, t: float) -> float:
    """phi(x, t) at a single point; exactly 0 at t = 0."""
    if t < 0:
        raise ArgumentError(f"t must be >= 0, got {t}")
    if t == 0:
        phi._points(x)
        return 0.0
    return float(phi.at(x)(np.asarray([t]))[0])


def left_inverse(phi: PhiFunction, x, tau: float, tol: float = 1e-12, max_doublings: int = 64) -> float:
    """Smallest t with phi(x, t) >= tau, to relative bracket width ``tol``.

    The upper end starts at 1 and doubles until phi reaches tau; the returned
    value is the feasible end of the final bracket.
    """
    if tau < 0:
        raise ArgumentError(f"tau must be >= 0, got {tau}")
    if tol <= 0:
        raise ArgumentError("tol must be positive")
    f = phi.at(x)
    if tau == 0:
        return 0.0

    def val(s):
        return float(f(np.asarray([s]))[0])

    lo, hi = 0.0, 1.0
    for _ in range(max_doublings + 1):
        if val(hi) >= tau:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise NumericalError("left_inverse: failed to bracket", tau=tau, upper=hi, steps=max_doublings)
    for _ in range(4000):
        if hi - lo <= tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if val(mid) >= tau:
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class SearchSpec:
    """Bracket growth and refinement settings for the conjugate supremum."""

    s_start: float = 1.0
    growth: float = 2.0
    max_expansions: int = 200
    xtol: float = 1e-12


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _conjugate_values(f, t, search: SearchSpec) -> np.ndarray:
    """sup_s (t s - f(s)) elementwise, for an f already bound to points."""
    t = np.asarray(t, dtype=float)

    def g(s):
        with np.errstate(over="ignore", invalid="ignore"):
            v = t * s - f(s)
        return np.where(np.isnan(v), -np.inf, v)

    b = np.full(t.shape, float(search.s_start))
    gb = g(b)
    active = t > 0
    best = np.where(active, np.maximum(gb, 0.0), 0.0)
    for _ in range(search.max_expansions):
        if not active.any():
            break
        b2 = np.where(active, b * search.growth, b)
        g2 = g(b2)
        grow = active & (g2 > gb)
        b = np.where(grow, b2, b)
        gb = np.where(grow, g2, gb)
        active = grow
    if active.any():
        raise UnboundedConjugateError(
            "conjugate supremum still increasing at bracket cap",
            t=float(t[active].flat[0]), bracket=float(b[active].flat[0]))
    best = np.maximum(best, np.where(t > 0, gb, 0.0))

    # golden-section maximization on [0, growth * b]; the objective is concave
    lo = np.zeros(t.shape)
    hi = b * search.growth
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    gc, gd = g(c), g(d)
    n_iter = int(math.ceil(math.log(search.xtol) / math.log(_INVPHI)))
    for _ in range(n_iter):
        left = gc > gd
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
        new_c = np.where(left, hi - _INVPHI * (hi - lo), d)
        new_d = np.where(left, c, lo + _INVPHI * (hi - lo))
        probe = np.where(left, new_c, new_d)
        gp = g(probe)
        gc, gd = np.where(left, gp, gd), np.where(left, gc, gp)
        c, d = new_c, new_d
    best = np.maximum(best, np.where(t > 0, np.maximum(gc, gd), 0.0))
    return np.where(t > 0, best, 0.0)


def conjugate(phi: PhiFunction, x, t, search: SearchSpec | None = None):
    """phi*(x, t) = sup_{s >= 0} (t s - phi(x, s)), returned as a lower bound.

    Scalar ``x`` and ``t`` give a float; otherwise ``t`` broadcasts against the
    points as in ``PhiFunction.at``.
    """
    search = search or SearchSpec()
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ArgumentError("conjugate needs t >= 0")
    scalar = t_arr.ndim == 0 and np.ndim(x) == 0
    pts = as_points(x, phi.dim)
    f = phi.at(pts)
    if scalar:
        return float(_conjugate_values(f, t_arr.reshape(1), search)[0])
    return _conjugate_values(f, t_arr, search)


def conjugate_phi(phi: PhiFunction, search: SearchSpec | None = None) -> PhiFunction:
    """The numerically conjugated integrand, usable wherever a PhiFunction is."""
    search = search or SearchSpec()

    def func(pts, t):
        return _conjugate_values(phi.at(pts, phi.dim), t, search)

    return PhiFunction.custom(func, domain=phi.domain, label=f"conj[{phi}]")


# ---------------------------------------------------------------------------
# sampled condition checks


@dataclass(frozen=True, eq=False)
class SampleSpec:
    """Spatial sample points plus the logarithmic t- and beta-grids."""

    points: np.ndarray = field(default_factory=lambda: np.zeros(1))
    t_min: float = 1e-6
    t_max: float = 1e6
    n_t: int = 200
    beta_min: float = 1e-6
    n_beta: int = 200
    rtol: float = 1e-9
    cap: float = 10.0

    def t_grid(self) -> np.ndarray:
        return np.logspace(math.log10(self.t_min), math.log10(self.t_max), self.n_t)

    def with_points(self, points) -> "SampleSpec":
        return SampleSpec(np.asarray(points, dtype=float), self.t_min, self.t_max, self.n_t,
                          self.beta_min, self.n_beta, self.rtol, self.cap)

    @classmethod
    def from_grid(cls, grid, max_points: int = 64, **kw) -> "SampleSpec":
        pts = grid.points()
        stride = max(1, len(pts) // max_points)
        return cls(points=pts[::stride], **kw)


@dataclass
class ConditionReport:
    condition: str
    passed: bool
    witness_constant: float
    samples_used: int
    exponent: Optional[float] = None
    counterexample: Optional[tuple] = None
    tolerance: float = 0.0
    note: str = ""

    def to_dict(self):
        from .reports import jsonable

        return jsonable({
            "kind": "condition", "condition": self.condition, "exponent": self.exponent,
            "passed": self.passed, "witness_constant": self.witness_constant,
            "counterexample": self.counterexample, "samples_used": self.samples_used,
            "tolerance": self.tolerance, "note": self.note,
        })

    def to_row(self):
        name = self.condition if self.exponent is None else f"{self.condition}_{self.exponent:g}"
        return {"name": name, "value": repr(float(self.witness_constant)),
                "tolerance": repr(float(self.tolerance)), "passed": str(bool(self.passed)).lower(),
                "iters": int(self.samples_used)}


def _point_at(pts, i):
    p = pts[i]
    return float(p) if np.ndim(p) == 0 else tuple(float(v) for v in p)


def _log_ratio_table(phi, exponent, samples):
    pts = as_points(samples.points, phi.dim)
    T = samples.t_grid()
    vals = phi.at(pts)(np.broadcast_to(T, (len(pts), len(T))).copy())
    with np.errstate(divide="ignore", invalid="ignore"):
        logg = np.log(vals) - exponent * np.log(T)
    return pts, T, logg


def check_ainc(phi: PhiFunction, p: float, a: float = 1.0, samples: SampleSpec | None = None) -> ConditionReport:
    """Sampled test of phi(x,s)/s^p <= a phi(x,t)/t^p for s < t."""
    if not p > 0 or not a >= 1:
        raise ArgumentError("check_ainc needs p > 0 and a >= 1")
    samples = samples or SampleSpec()
    pts, T, logg = _log_ratio_table(phi, p, samples)
    prefix = np.maximum.accumulate(logg, axis=1)
    excess = prefix[:, :-1] - logg[:, 1:]
    return _monotone_report("aInc", p, a, pts, T, logg, excess, samples, np.argmax)


def check_adec(phi: PhiFunction, q: float, a: float = 1.0, samples: SampleSpec | None = None) -> ConditionReport:
    """Sampled test of phi(x,t)/t^q <= a phi(x,s)/s^q for s < t."""
    if not q > 0 or not a >= 1:
        raise ArgumentError("check_adec needs q > 0 and a >= 1")
    samples = samples or SampleSpec()
    pts, T, logg = _log_ratio_table(phi, q, samples)
    prefix = np.minimum.accumulate(logg, axis=1)
    excess = logg[:, 1:] - prefix[:, :-1]
    return _monotone_report("aDec", q, a, pts, T, logg, excess, samples, np.argmin)


def _monotone_report(name, exponent, a, pts, T, logg, excess, samples, pick):
    excess = np.where(np.isnan(excess), np.inf, excess)
    flat = int(np.argmax(excess))
    i, j = np.unravel_index(flat, excess.shape)
    worst = float(excess[i, j])
    witness = math.exp(max(worst, 0.0)) if worst < 700 else math.inf
    passed = witness <= a * (1 + samples.rtol)
    counter = None
    if not passed:
        s_idx = int(pick(logg[i, : j + 1]))
        counter = (_point_at(pts, i), float(T[s_idx]), float(T[j + 1]))
    return ConditionReport(name, bool(passed), witness, int(logg.size), exponent=float(exponent),
                           counterexample=counter, tolerance=samples.rtol)


def check_a0(phi: PhiFunction, samples: SampleSpec | None = None) -> ConditionReport:
    """Search beta in (0, 1] with phi(x, beta) <= 1 <= phi(x, 1/beta) at every sample."""
    samples = samples or SampleSpec()
    pts = as_points(samples.points, phi.dim)
    f = phi.at(pts)
    betas = np.logspace(math.log10(samples.beta_min), 0.0, samples.n_beta)
    tol = samples.rtol

    def ok(beta):
        b = np.broadcast_to(np.atleast_1d(beta), (len(pts), np.size(beta))).copy()
        return (f(b) <= 1 + tol) & (f(1.0 / b) >= 1 - tol)

    table = ok(betas)
    good = table.all(axis=0)
    used = int(table.size)
    if not good.any():
        b = betas[0]
        row = ok(np.asarray([b]))[:, 0]
        i = int(np.argmin(row))
        return ConditionReport("A0", False, 0.0, used, counterexample=(_point_at(pts, i), float(b), float(1 / b)),
                               tolerance=tol)
    k = int(np.nonzero(good)[0].max())
    best = float(betas[k])
    if k + 1 < len(betas):
        lo, hi = best, float(betas[k + 1])
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if ok(np.asarray([mid]))[:, 0].all():
                lo = mid
            else:
                hi = mid
        best = lo
        used += 60 * len(pts)
    return ConditionReport("A0", True, best, used, tolerance=tol)


def _pairs(pts):
    n = len(pts)
    i, j = np.triu_indices(n, 1)
    diff = pts[i] - pts[j]
    d = np.abs(diff) if pts.ndim == 1 else np.sqrt(np.sum(diff ** 2, axis=-1))
    keep = d > 0
    return i[keep], j[keep], d[keep]


def _cap_report(name, values, pts_a, pts_b, cap, samples_used, note=""):
    values = np.where(np.isnan(values), np.inf, values)
    if values.size == 0:
        return ConditionReport(name, True, 0.0, 0, tolerance=cap, note=note)
    k = int(np.argmax(values))
    c = float(values[k])
    passed = math.isfinite(c) and c <= cap
    counter = None if passed else (pts_a(k), pts_b(k), c)
    return ConditionReport(name, bool(passed), c, samples_used, counterexample=counter, tolerance=cap, note=note)


def check_a1_variable_exponent(p_field, samples: SampleSpec | None = None, cap: float | None = None) -> ConditionReport:
    """Estimate the log-Hoelder constant of 1/p over all sampled pairs."""
    samples = samples or SampleSpec()
    cap = samples.cap if cap is None else cap
    p_field = spatial.from_spec(p_field)
    pts = np.asarray(samples.points, dtype=float)
    pv = np.asarray(p_field(pts), dtype=float)
    if np.any(pv < 1):
        raise ArgumentError("p_field must be >= 1")
    inv = 1.0 / pv
    i, j, d = _pairs(pts)
    with np.errstate(divide="ignore", over="ignore"):
        vals = np.abs(inv[i] - inv[j]) * np.log(math.e + 1.0 / d)
    return _cap_report("A1", vals, lambda k: _point_at(pts, i[k]), lambda k: _point_at(pts, j[k]), cap, len(d),
                       note="log-Hoelder continuity of 1/p")


def check_a2_variable_exponent(p_field, p_inf: float, samples: SampleSpec | None = None,
                               cap: float | None = None) -> ConditionReport:
    """Estimate the log-Hoelder decay constant |1/p(x) - 1/p_inf| log(e + |x|)."""
    if not p_inf >= 1:
        raise ArgumentError("p_inf must be >= 1")
    samples = samples or SampleSpec()
    cap = samples.cap if cap is None else cap
    p_field = spatial.from_spec(p_field)
    pts = np.asarray(samples.points, dtype=float)
    pv = np.asarray(p_field(pts), dtype=float)
    vals = np.abs(1.0 / pv - 1.0 / p_inf) * np.log(math.e + spatial.radius(pts))
    return _cap_report("A2", vals, lambda k: _point_at(pts, k), lambda k: float(p_inf), cap, len(pv),
                       note="log-Hoelder decay of 1/p")


def check_a1_double_phase(a_field, p: float, q: float, dim: int = 1, samples: SampleSpec | None = None,
                          cap: float | None = None) -> ConditionReport:
    """Estimate the Hoelder seminorm of a(x) with exponent (dim/p)(q - p), clamped to 1."""
    if not (q > p >= 1):
        raise ArgumentError("needs q > p >= 1")
    samples = samples or SampleSpec()
    cap = samples.cap if cap is None else cap
    alpha = dim / p * (q - p)
    note = f"Hoelder exponent {alpha:g}"
    if alpha > 1:
        note = f"Hoelder exponent {alpha:g} > 1 clamped to 1"
        alpha = 1.0
    a_field = spatial.from_spec(a_field)
    pts = np.asarray(samples.points, dtype=float)
    av = np.asarray(a_field(pts), dtype=float)
    i, j, d = _pairs(pts)
    with np.errstate(divide="ignore", over="ignore"):
        vals = np.abs(av[i] - av[j]) / d ** alpha
    rep = _cap_report("A1", vals, lambda k: _point_at(pts, i[k]), lambda k: _point_at(pts, j[k]), cap, len(d),
                      note=note)
    rep.exponent = alpha
    return rep


def _x_independent(phi, samples, name):
    pts = as_points(samples.points, phi.dim)
    T = samples.t_grid()
    vals = phi.at(pts)(np.broadcast_to(T, (len(pts), len(T))).copy())
    spread = float(np.max(np.abs(vals - vals[:1]) / np.maximum(vals[:1], 1e-300)))
    passed = spread <= samples.rtol
    return ConditionReport(name, passed, spread, int(vals.size), tolerance=samples.rtol,
                           note="phi independent of x")


def example_conditions(phi: PhiFunction, samples: SampleSpec, p_inf: float | None = None) -> dict:
    """Run the family-specific sufficient criteria for (A0), (A1), (A2), (aInc), (aDec).

    (aInc) and (aDec) are reported for the union over exponents in (1, inf),
    so an exponent of exactly 1 does not count.
    """
    fam = phi.family
    out = {"A0": check_a0(phi, samples)}
    pts = as_points(samples.points, phi.dim)
    if fam in ("power_law", "autonomous"):
        out["A1"] = _x_independent(phi, samples, "A1")
        out["A2"] = _x_independent(phi, samples, "A2")
        inc_exp = phi.p
        dec_exp = phi.p if fam == "power_law" else phi.p + 1
    elif fam == "variable_exponent":
        pv = np.asarray(phi.p_field(pts), dtype=float)
        out["A1"] = check_a1_variable_exponent(phi.p_field, samples)
        if p_inf is None:
            p_inf = float(pv[int(np.argmax(spatial.radius(pts)))])
        out["A2"] = check_a2_variable_exponent(phi.p_field, p_inf, samples)
        inc_exp, dec_exp = float(pv.min()), float(pv.max())
    elif fam == "double_phase":
        out["A1"] = check_a1_double_phase(phi.a_field, phi.p, phi.q, phi.dim, samples)
        out["A2"] = ConditionReport("A2", True, 0.0, 0, note="double phase always satisfies (A2)")
        inc_exp, dec_exp = phi.p, phi.q
    else:
        raise ArgumentError("example criteria exist only for the built-in families")
    inc = check_ainc(phi, inc_exp, 1.0, samples)
    if inc.passed and not inc_exp > 1:
        inc.passed = False
        inc.note = "exponent 1 does not give (aInc) for some p > 1"
    out["aInc"] = inc
    out["aDec"] = check_adec(phi, dec_exp, 1.0, samples)
    return out


@dataclass
class DecayConstants:
    """Constants driving the large-ball average decay bound.

    ``p`` is an (aDec) exponent of phi, ``a`` and ``beta`` are the (aInc)_{p'}
    and (A0) constants of the conjugate.
    """

    p: float
    p_conj: float
    a: float
    beta: float

    @property
    def factor(self) -> float:
        return 2.0 * self.a ** (1.0 / self.p_conj) / self.beta


def decay_exponent(phi: PhiFunction, samples: SampleSpec) -> float:
    fam = phi.family
    if fam == "power_law":
        p = phi.p
    elif fam == "autonomous":
        p = phi.p + 1
    elif fam == "variable_exponent":
        p = float(np.max(phi.p_field(as_points(samples.points, phi.dim))))
    elif fam == "double_phase":
        p = phi.q
    else:
        raise ArgumentError("pass the (aDec) exponent explicitly for custom integrands")
    if not p > 1:
        raise ArgumentError(f"(aDec) exponent must exceed 1, got {p}")
    return float(p)


def decay_constants(phi: PhiFunction, samples: SampleSpec, p: float | None = None,
                    search: SearchSpec | None = None) -> DecayConstants:
    """Measure p, p', a and beta by running the sampled checks on the numerical conjugate."""
    p = decay_exponent(phi, samples) if p is None else float(p)
    p_conj = p / (p - 1.0)
    star = conjugate_phi(phi, search)
    inc = check_ainc(star, p_conj, 1.0, samples)
    a0 = check_a0(star, samples)
    if not a0.passed:
        raise NumericalError("conjugate fails (A0) on samples", report=a0.to_dict())
    return DecayConstants(p, p_conj, max(1.0, inc.witness_constant), a0.witness_constant)
