"""1-D grids, quadrature weights and complex sampled functions.

Everything downstream (eigenbases, kernels, frequency responses) lives on a
Grid1D.  Grids are immutable; quadrature is a plain weighted sum, which keeps
every later identity (orthonormality, completeness, kernel initial conditions)
checkable as exact finite linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Grid1D",
    "SampledFunction",
    "discrete_delta",
    "quad",
    "inner",
]

_UNIFORM_RTOL = 1e-12


@dataclass(frozen=True)
class Grid1D:
    """Ordered sample points with positive quadrature weights.

    kind:
        "uniform"       closed interval, trapezoidal weights (endpoints halved)
        "open-interval" endpoints excluded; weights need not be uniform, which
                        also hosts Gauss-type quadrature nodes
        "periodic"      fundamental cell [x0, x0+L), all weights equal
    """

    points: np.ndarray
    weights: np.ndarray
    kind: str = "uniform"
    period: float | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        wts = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", wts)
        if pts.ndim != 1 or wts.ndim != 1:
            raise ValueError("points and weights must be 1-D")
        if pts.size != wts.size:
            raise ValueError("weight count must equal point count")
        if pts.size < 2:
            raise ValueError("need at least two grid points")
        if not np.all(np.diff(pts) > 0):
            raise ValueError("points must be strictly increasing")
        if not np.all(wts > 0):
            raise ValueError("weights must be strictly positive")
        if self.kind not in ("uniform", "open-interval", "periodic"):
            raise ValueError(f"unknown grid kind {self.kind!r}")
        if self.kind in ("uniform", "periodic"):
            dx = np.diff(pts)
            h = dx.mean()
            # successive differences jitter at the ulp of the coordinates,
            # not of the spacing, so scale the tolerance by both
            tol = _UNIFORM_RTOL * abs(h) + 8 * np.finfo(float).eps * max(abs(pts[0]), abs(pts[-1]))
            if np.max(np.abs(dx - h)) > tol:
                raise ValueError(f"{self.kind} grid must be evenly spaced")
        if self.kind == "periodic" and self.period is None:
            raise ValueError("periodic grid needs its period")

    @property
    def size(self) -> int:
        return self.points.size

    @property
    def spacing(self) -> float:
        """Mean point spacing (exact for uniform/periodic kinds)."""
        return float(np.diff(self.points).mean())

    @classmethod
    def uniform(cls, a: float, b: float, n: int) -> "Grid1D":
        """Closed interval [a, b] with trapezoidal weights."""
        if not b > a:
            raise ValueError("need b > a")
        pts = np.linspace(a, b, n)
        h = (b - a) / (n - 1)
        w = np.full(n, h)
        w[0] = w[-1] = h / 2
        return cls(pts, w, kind="uniform")

    @classmethod
    def open_interval(cls, a: float, b: float, n: int) -> "Grid1D":
        """Interior points of (a, b), full weight each.

        Equivalent to the trapezoid rule on [a, b] for functions vanishing at
        both endpoints (the square-well eigenfunctions).
        """
        if not b > a:
            raise ValueError("need b > a")
        h = (b - a) / (n + 1)
        pts = a + h * np.arange(1, n + 1)
        return cls(pts, np.full(n, h), kind="open-interval")

    @classmethod
    def periodic(cls, length: float, n: int, x0: float = 0.0) -> "Grid1D":
        if not length > 0:
            raise ValueError("period must be positive")
        h = length / n
        pts = x0 + h * np.arange(n)
        return cls(pts, np.full(n, h), kind="periodic", period=length)

    def index_of(self, x: float) -> int:
        """Index of the grid point nearest to x."""
        return int(np.argmin(np.abs(self.points - x)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Grid1D):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.points.shape == other.points.shape
            and np.array_equal(self.points, other.points)
            and np.array_equal(self.weights, other.weights)
        )

    def __hash__(self):
        return hash((self.kind, self.points.size, float(self.points[0]), float(self.points[-1])))


@dataclass(frozen=True)
class SampledFunction:
    """Complex samples of a function on a Grid1D."""

    grid: Grid1D
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", vals)
        if vals.ndim != 1 or vals.size != self.grid.size:
            raise ValueError("value count must equal grid point count")
        if not np.all(np.isfinite(vals)):
            raise ValueError("samples must be finite")

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        _require_same_grid(self, other)
        return SampledFunction(self.grid, self.values + other.values)

    def __sub__(self, other: "SampledFunction") -> "SampledFunction":
        _require_same_grid(self, other)
        return SampledFunction(self.grid, self.values - other.values)

    def __mul__(self, scalar: complex) -> "SampledFunction":
        return SampledFunction(self.grid, self.values * scalar)

    __rmul__ = __mul__

    def norm2(self) -> float:
        """L2 norm under the grid measure."""
        return float(np.sqrt(np.sum(self.grid.weights * np.abs(self.values) ** 2)))


def discrete_delta(grid: Grid1D, center: int) -> SampledFunction:
    """Grid delta: 1/weight at one point, zero elsewhere.

    Its quadrature integral is exactly 1, so kernel initial-condition checks
    stay exact at the discrete level.
    """
    if not 0 <= center < grid.size:
        raise ValueError("center index out of range")
    vals = np.zeros(grid.size, dtype=complex)
    vals[center] = 1.0 / grid.weights[center]
    return SampledFunction(grid, vals)


def quad(f: SampledFunction) -> complex:
    """Quadrature integral sum_i w_i f_i."""
    return complex(np.sum(f.grid.weights * f.values))


def inner(f: SampledFunction, g: SampledFunction) -> complex:
    """Weighted inner product <f, g> = sum_i w_i conj(f_i) g_i."""
    _require_same_grid(f, g)
    return complex(np.sum(f.grid.weights * np.conj(f.values) * g.values))


def _require_same_grid(f: SampledFunction, g: SampledFunction):
    if f.grid is not g.grid and f.grid != g.grid:
        raise ValueError("sampled functions live on different grids")
