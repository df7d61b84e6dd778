"""Uniform-grid fields with zero extension, balls and discrete ball averages.

A field lives on the nodes of a uniform grid over a box and is read as 0
everywhere outside the box.  Integrals are node-value Riemann sums, so the
discrete measure of a set of nodes is ``count * h**dim``.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import spatial
from .errors import ArgumentError, EmptyBallError, FieldFormatError
from .phi_core import Box

# radius marker standing for the limit r -> 0+ (value |f(x)|)
ZERO_MARKER = 0.0

_MEMBERSHIP_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class Grid:
    dim: int
    origin: tuple
    h: float
    extents: tuple

    def __post_init__(self):
        origin = tuple(float(v) for v in np.atleast_1d(self.origin))
        extents = tuple(int(v) for v in np.atleast_1d(self.extents))
        if self.dim not in (1, 2):
            raise ArgumentError(f"dim must be 1 or 2, got {self.dim}")
        if len(origin) != self.dim or len(extents) != self.dim:
            raise ArgumentError("origin/extents must have one entry per axis")
        if not self.h > 0:
            raise ArgumentError(f"grid spacing must be positive, got {self.h}")
        if min(extents) < 2:
            raise ArgumentError("need at least 2 nodes per axis")
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "extents", extents)
        object.__setattr__(self, "h", float(self.h))

    @classmethod
    def from_box(cls, lo, hi, h: float) -> "Grid":
        lo = tuple(float(v) for v in np.atleast_1d(lo))
        hi = tuple(float(v) for v in np.atleast_1d(hi))
        if not h > 0:
            raise ArgumentError(f"grid spacing must be positive, got {h}")
        extents = tuple(int(round((b - a) / h)) + 1 for a, b in zip(lo, hi))
        return cls(len(lo), lo, h, extents)

    @property
    def shape(self) -> tuple:
        return self.extents

    @property
    def size(self) -> int:
        return int(np.prod(self.extents))

    @property
    def cell_volume(self) -> float:
        return self.h ** self.dim

    @property
    def upper(self) -> tuple:
        return tuple(o + (n - 1) * self.h for o, n in zip(self.origin, self.extents))

    @property
    def box(self) -> Box:
        return Box(self.origin, self.upper)

    @property
    def diameter(self) -> float:
        return self.h * math.sqrt(sum((n - 1) ** 2 for n in self.extents))

    def axes(self) -> list:
        return [o + self.h * np.arange(n) for o, n in zip(self.origin, self.extents)]

    def coords(self) -> list:
        """Per-axis coordinate arrays shaped like the node array ('ij' indexing)."""
        return np.meshgrid(*self.axes(), indexing="ij")

    def points(self) -> np.ndarray:
        """All nodes in row-major order: shape (N,) in 1-D, (N, 2) in 2-D."""
        if self.dim == 1:
            return self.axes()[0]
        return np.stack([c.ravel() for c in self.coords()], axis=-1)

    def node_norms(self) -> np.ndarray:
        """|x| at every node, shaped like the node array."""
        return np.sqrt(sum(c ** 2 for c in self.coords()))

    def node_index(self, point) -> tuple:
        """Index of the node nearest to ``point``."""
        pt = np.atleast_1d(np.asarray(point, dtype=float))
        idx = np.rint((pt - np.asarray(self.origin)) / self.h).astype(int)
        if np.any(idx < 0) or np.any(idx >= np.asarray(self.extents)):
            raise ArgumentError(f"point {point} is outside the grid")
        return tuple(int(i) for i in idx)

    def node_point(self, index) -> tuple:
        index = np.atleast_1d(index)
        return tuple(o + self.h * int(i) for o, i in zip(self.origin, index))

    def refined(self) -> "Grid":
        return Grid(self.dim, self.origin, self.h / 2, tuple(2 * n - 1 for n in self.extents))

    def header(self) -> str:
        vals = [str(self.dim), repr(self.h), *map(str, self.extents), *map(repr, self.origin)]
        return " ".join(vals)


@dataclass(frozen=True, eq=False)
class GridField:
    """Node values on a grid; identically zero outside the box."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.shape != self.grid.shape:
            if vals.size == self.grid.size:
                vals = vals.reshape(self.grid.shape)
            else:
                raise FieldFormatError(f"values shape {vals.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(vals)):
            raise FieldFormatError("field values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def with_values(self, values) -> "GridField":
        return GridField(self.grid, values)

    def abs(self) -> "GridField":
        return self.with_values(np.abs(self.values))

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    def is_zero(self) -> bool:
        return not np.any(self.values)

    def integral(self) -> float:
        return float(np.sum(self.values) * self.grid.cell_volume)

    def restricted(self, mask) -> "GridField":
        """Zero the values where ``mask`` is False."""
        return self.with_values(np.where(mask, self.values, 0.0))

    def inside_ball(self, R: float) -> "GridField":
        """Values kept on the closed ball B(0, R), zero elsewhere."""
        return self.restricted(self.grid.node_norms() <= R * (1 + 1e-12) + 1e-300)

    def outside_ball(self, R: float) -> "GridField":
        return self.restricted(self.grid.node_norms() > R * (1 + 1e-12) + 1e-300)

    def _other(self, other):
        if isinstance(other, GridField):
            if other.grid is not self.grid and other.grid.header() != self.grid.header():
                raise ArgumentError("fields live on different grids")
            return other.values
        return other

    def __add__(self, other):
        return self.with_values(self.values + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.with_values(self.values - self._other(other))

    def __mul__(self, c):
        return self.with_values(self.values * self._other(c))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self.with_values(self.values / c)

    def __neg__(self):
        return self.with_values(-self.values)


@dataclass(frozen=True)
class Ball:
    center: tuple
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ArgumentError(f"ball radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", tuple(float(v) for v in np.atleast_1d(self.center)))

    @property
    def dim(self) -> int:
        return len(self.center)

    @property
    def measure(self) -> float:
        """Continuum Lebesgue measure: 2r in 1-D, pi r^2 in 2-D."""
        return 2.0 * self.radius if self.dim == 1 else math.pi * self.radius ** 2


# ---------------------------------------------------------------------------
# generators


def _indicator(lo=0.0, hi=1.0):
    def f(x):
        x = np.asarray(x, dtype=float)
        tol = 1e-12 * max(1.0, abs(lo), abs(hi))
        inside = (x >= lo - tol) & (x <= hi + tol)
        if x.ndim > 1:
            inside = np.all(inside, axis=-1)
        return inside.astype(float)

    return f


def _zero():
    return lambda x: np.zeros(np.shape(spatial.first_coord(x)))


def _constant(c=1.0):
    return lambda x: np.full(np.shape(spatial.first_coord(x)), float(c))


def _tent(center=0.0, halfwidth=1.0, height=1.0):
    return lambda x: height * np.maximum(0.0, 1.0 - spatial.radius(x, center) / halfwidth)


def _cos2_bump(center=0.0, halfwidth=1.0, height=1.0):
    def f(x):
        r = spatial.radius(x, center) / halfwidth
        return height * np.where(r < 1, np.cos(0.5 * np.pi * np.minimum(r, 1.0)) ** 2, 0.0)

    return f


def _poly_bump(center=0.0, halfwidth=1.0, height=1.0):
    def f(x):
        r = spatial.radius(x, center) / halfwidth
        return height * np.where(r < 1, (1.0 - np.minimum(r, 1.0) ** 2) ** 2, 0.0)

    return f


def _smooth_bump(center=0.0, halfwidth=1.0, height=1.0):
    def f(x):
        r2 = (spatial.radius(x, center) / halfwidth) ** 2
        inside = r2 < 1
        with np.errstate(divide="ignore", over="ignore"):
            v = np.exp(1.0 - 1.0 / np.where(inside, 1.0 - r2, 1.0))
        return height * np.where(inside, v, 0.0)

    return f


def _smoothstep(s):
    s = np.clip(s, 0.0, 1.0)
    return s * s * (3.0 - 2.0 * s)


def _plateau(lo=-1.0, hi=1.0, ramp=0.5, height=1.0):
    """1 on [lo, hi], C^1 smoothstep rolloff of width ``ramp`` on both sides."""

    def f(x):
        x = spatial.first_coord(x) if np.ndim(x) <= 1 else spatial.radius(x)
        up = _smoothstep((x - (lo - ramp)) / ramp)
        down = _smoothstep(((hi + ramp) - x) / ramp)
        return height * np.minimum(up, down)

    return f


def _gaussian(center=0.0, width=1.0, height=1.0):
    return lambda x: height * np.exp(-0.5 * (spatial.radius(x, center) / width) ** 2)


def _sine(freq=1.0, phase=0.0):
    return lambda x: np.sin(freq * spatial.first_coord(x) + phase)


def _affine(slope=1.0, intercept=0.0):
    return lambda x: slope * spatial.first_coord(x) + intercept


GENERATORS: dict = {
    "zero": _zero,
    "constant": _constant,
    "indicator": _indicator,
    "tent": _tent,
    "cos2_bump": _cos2_bump,
    "poly_bump": _poly_bump,
    "smooth_bump": _smooth_bump,
    "plateau": _plateau,
    "gaussian": _gaussian,
    "sine": _sine,
    "affine": _affine,
}


def generator_from_spec(spec) -> Callable:
    if callable(spec):
        return spec
    name, args = spatial.parse_call(str(spec))
    if name not in GENERATORS:
        raise ArgumentError(f"unknown field generator {name!r}; known: {sorted(GENERATORS)}")
    return GENERATORS[name](*args)


def make_field(grid: Grid, generator) -> GridField:
    """Sample ``generator`` at the grid nodes.

    ``generator`` is a callable on points, a catalog string such as
    ``"tent(0, 1)"``, or ``"file:<path>"`` / an ``os.PathLike`` naming a field file.
    """
    if isinstance(generator, os.PathLike) or (isinstance(generator, str) and generator.startswith("file:")):
        path = generator[5:] if isinstance(generator, str) else generator
        field = load_field(path)
        if field.grid.header() != grid.header():
            raise FieldFormatError(f"field file grid {field.grid.header()!r} != requested {grid.header()!r}")
        return field
    f = generator_from_spec(generator)
    vals = np.asarray(f(grid.points()), dtype=float)
    return GridField(grid, vals.reshape(grid.shape))


# ---------------------------------------------------------------------------
# field file format: "dim h n1 [n2] origin..." then values in row-major order


def format_field(field: GridField) -> str:
    lines = [field.grid.header()]
    vals = field.values.reshape(field.grid.extents[0], -1)
    for row in vals:
        lines.append(" ".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def save_field(field: GridField, path) -> None:
    from .reports import atomic_write

    atomic_write(path, format_field(field))


def parse_field(text: str) -> GridField:
    tokens = text.split()
    if not tokens:
        raise FieldFormatError("empty field file")
    try:
        dim = int(tokens[0])
        if dim not in (1, 2):
            raise FieldFormatError(f"dim must be 1 or 2, got {dim}")
        h = float(tokens[1])
        extents = tuple(int(t) for t in tokens[2: 2 + dim])
        origin = tuple(float(t) for t in tokens[2 + dim: 2 + 2 * dim])
        values = np.array([float(t) for t in tokens[2 + 2 * dim:]])
    except (IndexError, ValueError) as exc:
        raise FieldFormatError(f"malformed field header: {exc}") from exc
    grid = Grid(dim, origin, h, extents)
    if values.size != grid.size:
        raise FieldFormatError(f"expected {grid.size} values, found {values.size}")
    return GridField(grid, values.reshape(grid.shape))


def load_field(path) -> GridField:
    with open(path, encoding="utf-8") as fh:
        return parse_field(fh.read())


# ---------------------------------------------------------------------------
# balls


def ball_average(field: GridField, ball: Ball) -> float:
    """Average of the field over the lattice nodes lying in the closed ball.

    Nodes outside the box carry value 0 but still count towards the discrete
    measure, so constants average exactly to themselves.
    """
    grid = field.grid
    if ball.dim != grid.dim:
        raise ArgumentError("ball and grid dimensions differ")
    h, r = grid.h, ball.radius
    slack = _MEMBERSHIP_SLACK * h
    ranges = []
    for c, o in zip(ball.center, grid.origin):
        k0 = math.ceil((c - r - o - slack) / h)
        k1 = math.floor((c + r - o + slack) / h)
        ranges.append(np.arange(k0, k1 + 1))
    idx = np.meshgrid(*ranges, indexing="ij")
    d2 = sum((o + h * k - c) ** 2 for k, o, c in zip(idx, grid.origin, ball.center))
    member = d2 <= (r + slack) ** 2
    count = int(np.count_nonzero(member))
    if count == 0:
        raise EmptyBallError(f"ball {ball} contains no lattice node")
    in_box = member.copy()
    for k, n in zip(idx, grid.extents):
        in_box &= (k >= 0) & (k < n)
    sel = tuple(k[in_box] for k in idx)
    total = float(np.sum(field.values[sel]))
    return total / count


def candidate_radii(grid: Grid, r_max: float) -> np.ndarray:
    """Radii {k h / 2 : k = 1..ceil(2 r_max / h)}, preceded by the 0-marker."""
    if r_max < grid.h * (1 - 1e-12):
        raise ArgumentError(f"r_max must be >= h = {grid.h}, got {r_max}")
    K = n_radii(grid, r_max)
    return np.concatenate([[ZERO_MARKER], 0.5 * grid.h * np.arange(1, K + 1)])


def n_radii(grid: Grid, r_max: float) -> int:
    return int(math.ceil(2.0 * r_max / grid.h - 1e-9))


def lattice_count(dim: int, k: int) -> int:
    """Number of lattice offsets o with |o| h <= k h / 2."""
    m = k // 2
    rng = np.arange(-m, m + 1)
    if dim == 1:
        return int(np.count_nonzero(4 * rng ** 2 <= k * k))
    a, b = np.meshgrid(rng, rng, indexing="ij")
    return int(np.count_nonzero(4 * (a ** 2 + b ** 2) <= k * k))
