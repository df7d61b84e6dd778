"""Batch runner: ``mosmax <command> --config PATH [--out DIR] [--seed N] [--threads N]``.

Config files are flat ``dotted.key = value`` lines.  Values are Python
literals (numbers, strings, lists, dicts); anything else is read as a bare
string.  Environment variables ``MOSMAX__SECTION__KEY=value`` override keys.
"""
from __future__ import annotations

import argparse
import ast
import hashlib
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from . import spatial
from .errors import ConfigError, MosmaxError, NumericalError
from .grid_field import Ball, Grid, format_field, generator_from_spec, make_field
from .maximal import (average_decay_bound, localization_check, maximal_function, radius_upper_bound)
from .modular_norm import (check_embedding, check_holder, check_norm_modular_comparison,
                           check_smallness_certificate, check_tail_certificate, luxemburg_norm)
from .phi_core import PhiFunction, SampleSpec, as_points, check_ainc, decay_constants, example_conditions
from .reports import CSV_COLUMNS, VerificationReport, atomic_write, dumps, jsonable, rows_to_csv
from .sobolev_max import (ContinuityTrace, PerturbationFamily, check_derivative_formula,
                          check_gradient_bound, continuity_experiment, weak_gradient)

COMMANDS = ("norm", "maximal", "conditions", "verify", "continuity")
ENV_PREFIX = "MOSMAX__"
SECTIONS = ("phi", "grid", "field", "norm", "maximal", "conditions", "verify", "continuity", "seed", "output")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3

DEFAULT_CORPUS = {
    "indicator": "indicator(0.0, 1.0)",
    "tent": "tent(0.0, 1.0)",
    "cos2": "cos2_bump(0.0, 1.5)",
    "gaussian": "gaussian(0.3, 0.5)",
    "plateau": "plateau(-1.0, 0.5, 0.7)",
    "poly": "poly_bump(0.5, 1.0)",
    "smooth": "smooth_bump(-0.5, 1.2)",
}
DEFAULT_GRID = {"grid.lo": -4.0, "grid.hi": 4.0, "grid.h": 1 / 32}

DEFAULTS = {
    "norm.tol": 1e-8,
    "maximal.r_max": None,
    "conditions.expected": None,
    "conditions.p_inf": None,
    "conditions.max_points": 64,
    "verify.eps": 0.5,
    "verify.R": 1.0,
    "verify.r_max": None,
    "verify.tol": None,
    "verify.balls": [1.0, 2.0, 4.0],
    "verify.embedding_bound": 1e6,
    "verify.embedding_stability": 0.2,
    "continuity.M_steps": 32,
    "continuity.families": ["bump(2.5, 0.8, 0.5)"],
    "continuity.field": None,
    "continuity.steps": "all",
    "continuity.R": None,
    "continuity.lam": None,
    "continuity.delta0": None,
    "continuity.eps": 0.1,
    "continuity.stability_fraction": 0.05,
    "continuity.r_max": None,
    "seed": 0,
}

POSITIVE = {"norm.tol", "verify.eps", "verify.R", "verify.embedding_bound", "verify.embedding_stability",
            "continuity.eps", "continuity.stability_fraction", "continuity.R", "continuity.lam",
            "continuity.delta0", "verify.tol", "verify.r_max", "maximal.r_max", "continuity.r_max"}


# ---------------------------------------------------------------------------
# config


def parse_value(text: str):
    text = text.strip()
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError):
        return text


def read_config_text(text: str, source: str = "<config>") -> dict:
    out: dict = {}
    errors = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            errors.append((f"{source}:{lineno}", f"expected 'key = value', got {raw!r}"))
            continue
        out[key] = parse_value(value)
    if errors:
        raise ConfigError(errors)
    return out


def env_overrides(environ=None) -> dict:
    environ = os.environ if environ is None else environ
    out = {}
    for name in sorted(environ):
        if name.startswith(ENV_PREFIX) and len(name) > len(ENV_PREFIX):
            out[name[len(ENV_PREFIX):].lower().replace("__", ".")] = parse_value(environ[name])
    return out


@dataclass
class ExperimentConfig:
    raw: dict
    phi: PhiFunction
    grid: Grid
    fields: dict
    field_specs: dict
    params: dict
    seed: int

    def param(self, key):
        return self.params[key]

    @property
    def hash(self) -> str:
        return hashlib.sha256(json.dumps(jsonable(self.raw), sort_keys=True).encode()).hexdigest()


def _number(raw, key, errors, positive=False, integer=False):
    v = raw.get(key)
    if v is None:
        return None
    if isinstance(v, bool) or not isinstance(v, (int, float)) or (integer and not float(v).is_integer()):
        errors.append((key, f"expected a {'whole ' if integer else ''}number, got {v!r}"))
        return None
    if positive and not v > 0:
        errors.append((key, f"must be positive, got {v!r}"))
        return None
    return int(v) if integer else float(v)


def _build_phi(raw, errors):
    fam = raw.get("phi.family")
    if fam is None:
        errors.append(("phi.family", "missing"))
        return None
    builtin = ("power_law", "autonomous", "variable_exponent", "double_phase")
    if fam not in builtin:
        errors.append(("phi.family", f"unknown family {fam!r}; known: {list(builtin)}"))
        return None
    need = {"power_law": ("phi.p",), "autonomous": ("phi.p",), "variable_exponent": ("phi.p_field",),
            "double_phase": ("phi.p", "phi.q", "phi.a")}[fam]
    missing = [k for k in need if k not in raw]
    for k in missing:
        errors.append((k, f"required for family {fam}"))
    if missing:
        return None
    try:
        if fam == "power_law":
            return PhiFunction.power_law(_number(raw, "phi.p", errors))
        if fam == "autonomous":
            return PhiFunction.autonomous(_number(raw, "phi.p", errors))
        if fam == "variable_exponent":
            return PhiFunction.variable_exponent(spatial.from_spec(raw["phi.p_field"]))
        return PhiFunction.double_phase(_number(raw, "phi.p", errors), _number(raw, "phi.q", errors),
                                        spatial.from_spec(raw["phi.a"]))
    except (TypeError, ValueError, MosmaxError) as exc:
        errors.append(("phi", str(exc)))
        return None


def _build_grid(raw, errors):
    lo, hi = raw.get("grid.lo"), raw.get("grid.hi")
    h = _number(raw, "grid.h", errors, positive=True)
    for key, v in (("grid.lo", lo), ("grid.hi", hi)):
        if v is None:
            errors.append((key, "missing"))
    if lo is None or hi is None or h is None:
        return None
    lo_t, hi_t = np.atleast_1d(np.asarray(lo, dtype=float)), np.atleast_1d(np.asarray(hi, dtype=float))
    dim = raw.get("grid.dim", len(lo_t))
    if dim not in (1, 2) or len(lo_t) != dim or len(hi_t) != dim:
        errors.append(("grid.dim", f"dimension must be 1 or 2 and match grid.lo/grid.hi, got {dim}"))
        return None
    if np.any(hi_t <= lo_t):
        errors.append(("grid.hi", "must exceed grid.lo"))
        return None
    try:
        return Grid.from_box(lo_t, hi_t, h)
    except MosmaxError as exc:
        errors.append(("grid", str(exc)))
        return None


def _field_spec_error(spec):
    text = str(spec).strip()
    if text.startswith("file:"):
        return None if os.path.exists(text[5:]) else f"file not found: {text[5:]}"
    try:
        generator_from_spec(text)
    except (ValueError, SyntaxError, TypeError, MosmaxError) as exc:
        return str(exc)
    return None


def validate(raw: dict) -> ExperimentConfig:
    errors = []
    for key in raw:
        if key.split(".", 1)[0] not in SECTIONS:
            errors.append((key, f"unknown section; known: {list(SECTIONS)}"))
    phi = _build_phi(raw, errors)
    grid = _build_grid(raw, errors)
    specs = {k.split(".", 1)[1]: v for k, v in raw.items() if k.startswith("field.")}
    if not specs:
        specs = dict(DEFAULT_CORPUS)
    for name, spec in specs.items():
        err = _field_spec_error(spec)
        if err:
            errors.append((f"field.{name}", err))
    params = dict(DEFAULTS)
    for key in DEFAULTS:
        if key in raw:
            params[key] = raw[key]
    for key in sorted(POSITIVE):
        if raw.get(key) is not None:
            _number(raw, key, errors, positive=True)
    _number(raw, "continuity.M_steps", errors, positive=True, integer=True)
    _number(raw, "conditions.max_points", errors, positive=True, integer=True)
    if "seed" in raw:
        _number(raw, "seed", errors, integer=True)
    if params["continuity.steps"] not in ("all", "dyadic"):
        errors.append(("continuity.steps", "must be 'all' or 'dyadic'"))
    fams = params["continuity.families"]
    fams = [fams] if isinstance(fams, str) else fams
    for i, spec in enumerate(fams):
        try:
            perturbation_from_spec(spec, 0)
        except (ValueError, SyntaxError, TypeError, MosmaxError) as exc:
            errors.append((f"continuity.families[{i}]", str(exc)))
    params["continuity.families"] = list(fams)
    if params["continuity.field"] is not None and params["continuity.field"] not in specs:
        errors.append(("continuity.field", f"unknown field {params['continuity.field']!r}"))
    if errors:
        raise ConfigError(errors)
    fields = {name: make_field(grid, spec) for name, spec in specs.items()}
    return ExperimentConfig(raw, phi, grid, fields, specs, params, int(params["seed"]))


def parse_config(path, environ=None, overrides: dict | None = None) -> ExperimentConfig:
    """Read, merge env overrides, and validate.  All problems are reported together."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError([("config", f"cannot read {path}: {exc.strerror}")]) from exc
    raw = read_config_text(text, str(path))
    raw.update(env_overrides(environ))
    if overrides:
        raw.update(overrides)
    if "grid.h" not in raw and "grid.lo" not in raw and "grid.hi" not in raw:
        raw.update(DEFAULT_GRID)
    return validate(raw)


def perturbation_from_spec(spec: str, seed: int) -> PerturbationFamily:
    """``scale``, ``scale(amp)``, ``bump(center, width, amplitude)`` or ``noise(width, smoothing, amplitude)``."""
    text = str(spec).strip()
    name, args = (text, ()) if "(" not in text else spatial.parse_call(text)
    if name == "scale":
        return PerturbationFamily("scale", amplitude=float(args[0]) if args else 1.0)
    if name == "bump":
        keys = ("center", "width", "amplitude")
        return PerturbationFamily("bump", **dict(zip(keys, args)))
    if name == "noise":
        keys = ("width", "smoothing", "amplitude")
        return PerturbationFamily("noise", seed=seed, **dict(zip(keys, args)))
    raise ValueError(f"unknown perturbation family {name!r}; known: scale, bump, noise")


# ---------------------------------------------------------------------------
# running


@dataclass
class Member:
    label: str
    passed: bool
    body: dict
    row: dict
    numerical_error: bool = False
    trace: ContinuityTrace | None = None


@dataclass
class RunReport:
    command: str
    config_hash: str
    config: dict
    members: list = dc_field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(m.passed for m in self.members)

    @property
    def numerical_error(self) -> bool:
        return any(m.numerical_error for m in self.members)

    def body(self) -> dict:
        return {"command": self.command, "config_hash": self.config_hash, "config": jsonable(self.config),
                "passed": self.passed,
                "summary": {"members": len(self.members), "passed": sum(m.passed for m in self.members)},
                "members": [dict(m.body, label=m.label) for m in self.members]}

    def to_json(self) -> str:
        return dumps(dict(self.body(), wall_time_s=self.wall_time))

    def to_csv(self) -> str:
        return rows_to_csv([m.row for m in self.members], CSV_COLUMNS)

    def trace_csv(self) -> str | None:
        traces = [m.trace for m in self.members if m.trace is not None]
        if not traces:
            return None
        rows = [dict(r, family=t.family) for t in traces for r in t.csv_rows()]
        return rows_to_csv(rows, ("family",) + ContinuityTrace.CSV_COLUMNS)

    def exit_code(self) -> int:
        if self.passed:
            return EXIT_OK
        return EXIT_NUMERICAL if self.numerical_error else EXIT_FAIL


def _from_verification(label: str, rep: VerificationReport) -> Member:
    row = dict(rep.to_row(), name=label)
    return Member(label, bool(rep.passed) or rep.skipped, rep.to_dict(), row)


def _guarded(label: str, fn: Callable[[], Member]) -> Callable[[], Member]:
    def run():
        try:
            return fn()
        except MosmaxError as exc:
            body = {"kind": "error", "error": type(exc).__name__, "message": str(exc),
                    "diagnostics": jsonable(getattr(exc, "diagnostics", {}))}
            row = {"name": label, "value": "nan", "tolerance": "nan", "passed": "false", "iters": 0}
            return Member(label, False, body, row, numerical_error=isinstance(exc, NumericalError))

    return run


def _inc_exponent(phi: PhiFunction, samples: SampleSpec) -> float:
    if phi.family == "variable_exponent":
        return float(np.min(phi.p_field(as_points(samples.points, phi.dim))))
    return float(phi.p)


def tasks_norm(cfg: ExperimentConfig):
    tol = float(cfg.param("norm.tol"))

    def one(name, f):
        def run():
            rep = luxemburg_norm(cfg.phi, f, tol)
            return Member(f"norm:{name}", True, rep.to_dict(), rep.to_row(f"norm:{name}"))

        return run

    return [(f"norm:{n}", one(n, f)) for n, f in cfg.fields.items()]


def tasks_maximal(cfg: ExperimentConfig, out_dir: str | None):
    r_max = cfg.param("maximal.r_max")

    def one(name, f):
        def run():
            mf = maximal_function(f, r_max)
            dominates = bool(np.all(mf.values >= np.abs(f.values)))
            if out_dir is not None:
                atomic_write(os.path.join(out_dir, f"maximal_{name}.field"), format_field(mf))
            rep = VerificationReport("maximal", dominates, float(np.max(mf.values)), 0.0, mf.grid.size,
                                     details={"sup_Mf": float(np.max(mf.values)), "Mf_ge_abs_f": dominates,
                                              "values": mf.values.reshape(-1)})
            return _from_verification(f"maximal:{name}", rep)

        return run

    return [(f"maximal:{n}", one(n, f)) for n, f in cfg.fields.items()]


def tasks_conditions(cfg: ExperimentConfig):
    samples = SampleSpec.from_grid(cfg.grid, int(cfg.param("conditions.max_points")))
    expected = cfg.param("conditions.expected") or {}
    cache = {}

    def all_reports():
        if "r" not in cache:
            cache["r"] = example_conditions(cfg.phi, samples, cfg.param("conditions.p_inf"))
        return cache["r"]

    def one(name):
        def run():
            rep = all_reports()[name]
            want = expected.get(name)
            ok = rep.passed if want is None else (bool(rep.passed) == bool(want))
            body = dict(rep.to_dict(), expected=want)
            return Member(f"conditions:{name}", ok, body, dict(rep.to_row(), name=f"conditions:{name}",
                                                              passed=str(ok).lower()))

        return run

    return [(f"conditions:{n}", one(n)) for n in ("A0", "A1", "A2", "aInc", "aDec")]


def tasks_verify(cfg: ExperimentConfig):
    phi, grid = cfg.phi, cfg.grid
    eps = float(cfg.param("verify.eps"))
    R = float(cfg.param("verify.R"))
    r_max = cfg.param("verify.r_max")
    tol = cfg.param("verify.tol")
    samples = SampleSpec.from_grid(grid)
    names = list(cfg.fields)
    cache = {}

    def constants():
        if "c" not in cache:
            cache["c"] = decay_constants(phi, samples)
        return cache["c"]

    def inc_constant():
        if "a" not in cache:
            p = _inc_exponent(phi, samples)
            cache["a"] = (p, max(1.0, check_ainc(phi, p, 1.0, samples).witness_constant))
        return cache["a"]

    tasks = []

    def add(label, fn):
        tasks.append((label, fn))

    def refined_corpus():
        fine = grid.refined()
        if any(str(s).strip().startswith("file:") for s in cfg.field_specs.values()):
            return None
        return [make_field(fine, cfg.field_specs[n]) for n in names]

    for idx, name in enumerate(names):
        f = cfg.fields[name]
        g = cfg.fields[names[(idx + 1) % len(names)]]
        add(f"norm_modular_comparison:{name}",
            lambda f=f, name=name: _from_verification(f"norm_modular_comparison:{name}",
                                                      check_norm_modular_comparison(phi, *inc_constant(), f)))
        add(f"holder:{name}", lambda f=f, g=g, name=name: _from_verification(f"holder:{name}",
                                                                             check_holder(phi, f, g)))
        add(f"tail_radius:{name}", lambda f=f, name=name: _from_verification(
            f"tail_radius:{name}", check_tail_certificate(phi, f, eps)))
        add(f"smallness:{name}", lambda f=f, name=name: _from_verification(
            f"smallness:{name}", check_smallness_certificate(phi, f, eps)))
        for r in cfg.param("verify.balls"):
            center = tuple(0.0 for _ in range(grid.dim)) if grid.dim > 1 else (0.0,)
            add(f"average_decay:{name}:r={r:g}", lambda f=f, r=r, name=name, c=center: _average_decay(
                phi, f, Ball(c, float(r)), constants(), f"average_decay:{name}:r={r:g}"))
        add(f"radius_bound:{name}", lambda f=f, name=name: _radius_bound(phi, f, R, r_max, tol, constants(),
                                                                         f"radius_bound:{name}"))
        add(f"localization:{name}", lambda f=f, name=name: _localization(f, R, r_max, tol,
                                                                         f"localization:{name}"))
        add(f"gradient_bound:{name}", lambda f=f, name=name: _from_verification(
            f"gradient_bound:{name}", check_gradient_bound(phi, weak_gradient(f), r_max)))
        add(f"derivative_formula:{name}", lambda f=f, name=name: _from_verification(
            f"derivative_formula:{name}", check_derivative_formula(phi, weak_gradient(f), r_max, tol)))
    add("embedding", lambda: _from_verification("embedding", check_embedding(
        phi, 1.0, [cfg.fields[n] for n in names], refined_corpus(), grid.box,
        float(cfg.param("verify.embedding_bound")), float(cfg.param("verify.embedding_stability")))))
    return tasks


def _average_decay(phi, f, ball, constants, label):
    rep = average_decay_bound(phi, f, constants.p, constants.a, constants.beta, ball)
    return _from_verification(label, rep)


def _radius_bound(phi, f, R, r_max, tol, constants, label):
    rb = radius_upper_bound(phi, f, R, r_max, tol, constants)
    ok = math.isfinite(rb.r0) and rb.within and rb.scan_complete
    rep = VerificationReport("radius_bound", ok, rb.apriori - rb.r0, rb.apriori,
                             details={"R0": rb.r0, "apriori": rb.apriori, "lower_bound": rb.lower_bound,
                                      "R_hat": rb.r_hat, "r_max_used": rb.r_max, "scan_complete": rb.scan_complete,
                                      "norm": rb.norm})
    return _from_verification(label, rep)


def _localization(f, R, r_max, tol, label):
    from .maximal import max_radius

    r0 = max_radius(f, R, r_max, tol)
    frak = r0 + R + 2 * f.grid.h
    return _from_verification(label, localization_check(f, R, frak, tol, r_max))


def tasks_continuity(cfg: ExperimentConfig):
    name = cfg.param("continuity.field") or next(iter(cfg.fields))
    f = cfg.fields[name]
    grid = cfg.grid
    M = int(cfg.param("continuity.M_steps"))
    steps = list(range(1, M + 1)) if cfg.param("continuity.steps") == "all" else \
        sorted({2 ** k for k in range(int(math.log2(M)) + 1)} | {M})
    R = cfg.param("continuity.R")
    R = 0.5 * min(b - a for a, b in zip(grid.origin, grid.upper)) if R is None else float(R)
    eps = float(cfg.param("continuity.eps"))
    frac = float(cfg.param("continuity.stability_fraction"))
    ball_measure = Ball(tuple([0.0] * grid.dim), R).measure
    sf = weak_gradient(f)

    def one(idx, spec):
        label = f"continuity:{name}:{spec}"

        def run():
            fam = perturbation_from_spec(spec, cfg.seed + idx)
            (trace,) = continuity_experiment(cfg.phi, sf, [fam], M, cfg.param("continuity.r_max"), R,
                                             cfg.param("continuity.lam"), cfg.param("continuity.delta0"),
                                             eps, steps=steps)
            last = trace.rows[-1]
            gap_ok = last.output_gap < eps
            stab_ok = last.stability_measure < frac * ball_measure
            body = dict(trace.to_dict(), passed=gap_ok and stab_ok, final_output_gap=last.output_gap,
                        stability_threshold=frac * ball_measure, output_ratio=trace.output_ratio)
            row = {"name": label, "value": repr(float(last.output_gap)), "tolerance": repr(eps),
                   "passed": str(gap_ok and stab_ok).lower(), "iters": len(trace.rows)}
            return Member(label, gap_ok and stab_ok, body, row, trace=trace)

        return run

    return [(f"continuity:{name}:{s}", one(i, s)) for i, s in enumerate(cfg.param("continuity.families"))]


def run(command: str, cfg: ExperimentConfig, out_dir: str | None = None, threads: int = 1) -> RunReport:
    """Execute ``command``; members are reported in declaration order."""
    if command not in COMMANDS:
        raise ConfigError([("command", f"unknown command {command!r}; known: {list(COMMANDS)}")])
    start = time.perf_counter()
    if command == "norm":
        tasks = tasks_norm(cfg)
    elif command == "maximal":
        tasks = tasks_maximal(cfg, out_dir)
    elif command == "conditions":
        tasks = tasks_conditions(cfg)
    elif command == "verify":
        tasks = tasks_verify(cfg)
    else:
        tasks = tasks_continuity(cfg)
    guarded = [_guarded(label, fn) for label, fn in tasks]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            members = list(pool.map(lambda fn: fn(), guarded))
    else:
        members = [fn() for fn in guarded]
    report = RunReport(command, cfg.hash, cfg.raw, members)
    report.wall_time = time.perf_counter() - start
    return report


def write_report(report: RunReport, out_dir: str) -> list:
    paths = [os.path.join(out_dir, f"{report.command}.json"), os.path.join(out_dir, f"{report.command}.csv")]
    atomic_write(paths[0], report.to_json())
    atomic_write(paths[1], report.to_csv())
    trace = report.trace_csv()
    if trace is not None:
        paths.append(os.path.join(out_dir, f"{report.command}_trace.csv"))
        atomic_write(paths[-1], trace)
    return paths


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mosmax", description="Orlicz-space norms and the maximal operator on grids.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", required=True, help="flat dotted-key config file")
    ap.add_argument("--out", default=".", help="directory for <command>.json / <command>.csv")
    ap.add_argument("--seed", type=int, default=None, help="seed for randomized perturbation families")
    ap.add_argument("--threads", type=int, default=1, help="worker threads for independent report members")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if args.seed is not None and not 0 <= args.seed < 2 ** 64:
        print("error: --seed must fit in an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = parse_config(args.config, overrides=None if args.seed is None else {"seed": args.seed})
    except ConfigError as exc:
        for path, msg in exc.errors:
            print(f"config error: {path}: {msg}", file=sys.stderr)
        return EXIT_USAGE
    report = run(args.command, cfg, args.out, args.threads)
    paths = write_report(report, args.out)
    status = "PASS" if report.passed else "FAIL"
    print(f"{args.command}: {status} ({sum(m.passed for m in report.members)}/{len(report.members)} members); "
          f"wrote {', '.join(paths)}")
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
