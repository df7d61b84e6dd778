"""Named spatial functions x -> value, used for exponents p(x) and weights a(x).

Coordinates follow one convention everywhere in the package: a 1-D array of
shape ``(N,)`` in one dimension and ``(N, 2)`` in two.  Radial catalog
entries use the Euclidean norm, so they work in either dimension.
"""
from __future__ import annotations

import ast
import math
import re
from dataclasses import dataclass
from typing import Callable

import numpy as np


def radius(x, center=0.0) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim <= 1:
        return np.abs(x - center)
    c = np.broadcast_to(np.asarray(center, dtype=float), (x.shape[-1],))
    return np.sqrt(np.sum((x - c) ** 2, axis=-1))


def first_coord(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x if x.ndim <= 1 else x[..., 0]


@dataclass(frozen=True)
class SpatialFunction:
    """A callable spatial function carrying a printable description."""

    name: str
    params: tuple
    func: Callable

    def __call__(self, x):
        return np.asarray(self.func(np.asarray(x, dtype=float)), dtype=float)

    def __str__(self):
        args = ", ".join(repr(p) for p in self.params)
        return f"{self.name}({args})"


def constant(value: float) -> SpatialFunction:
    def f(x):
        return np.full(np.shape(first_coord(x)), float(value))

    return SpatialFunction("constant", (value,), f)


def affine(slope: float, intercept: float = 0.0) -> SpatialFunction:
    """slope * x1 + intercept (first coordinate in 2-D)."""
    return SpatialFunction("affine", (slope, intercept), lambda x: slope * first_coord(x) + intercept)


def clamped_ramp(low: float, high: float, x0: float = 0.0, x1: float = 1.0) -> SpatialFunction:
    """low + (high - low) * clamp((x1coord - x0) / (x1 - x0), 0, 1); Lipschitz."""

    def f(x):
        s = np.clip((first_coord(x) - x0) / (x1 - x0), 0.0, 1.0)
        return low + (high - low) * s

    return SpatialFunction("clamped_ramp", (low, high, x0, x1), f)


def gaussian_bump(base: float, amplitude: float, center: float = 0.0, width: float = 1.0) -> SpatialFunction:
    def f(x):
        return base + amplitude * np.exp(-0.5 * (radius(x, center) / width) ** 2)

    return SpatialFunction("gaussian_bump", (base, amplitude, center, width), f)


def log_decay(base: float, amplitude: float) -> SpatialFunction:
    """base + amplitude / log(e + |x|): the borderline log-Hoelder decay profile."""

    def f(x):
        return base + amplitude / np.log(math.e + radius(x))

    return SpatialFunction("log_decay", (base, amplitude), f)


def sampled(field) -> SpatialFunction:
    """Nearest-node lookup into a GridField (values outside the box clamp to the edge)."""
    grid = field.grid
    values = np.asarray(field.values)

    def f(x):
        x = np.asarray(x, dtype=float)
        pts = x.reshape(-1, 1) if grid.dim == 1 else x.reshape(-1, grid.dim)
        idx = np.rint((pts - np.asarray(grid.origin)) / grid.h).astype(int)
        idx = np.clip(idx, 0, np.asarray(grid.extents) - 1)
        out = values[tuple(idx[:, d] for d in range(grid.dim))]
        return out.reshape(first_coord(x).shape)

    return SpatialFunction("sampled", (f"<{grid.dim}-D field>",), f)


CATALOG = {
    "constant": constant,
    "affine": affine,
    "clamped_ramp": clamped_ramp,
    "gaussian_bump": gaussian_bump,
    "log_decay": log_decay,
}

_CALL = re.compile(r"^\s*([A-Za-z_]\w*)\s*\((.*)\)\s*$")


def parse_call(text: str):
    """Split ``name(arg, ...)`` into ``(name, args_tuple)`` using literal evaluation."""
    m = _CALL.match(text)
    if not m:
        raise ValueError(f"expected name(args...), got {text!r}")
    name, body = m.groups()
    args = ast.literal_eval(f"({body},)") if body.strip() else ()
    return name, tuple(args)


def from_spec(spec) -> SpatialFunction:
    """Build a catalog function from ``"name(args)"``, a number, or ``"file:path"``."""
    if isinstance(spec, SpatialFunction) or callable(spec):
        return spec
    if isinstance(spec, (int, float)):
        return constant(float(spec))
    text = str(spec).strip()
    if text.startswith("file:"):
        from .grid_field import load_field

        return sampled(load_field(text[5:]))
    name, args = parse_call(text)
    if name not in CATALOG:
        raise ValueError(f"unknown spatial function {name!r}; known: {sorted(CATALOG)}")
    return CATALOG[name](*args)
