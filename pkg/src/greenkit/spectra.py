"""Model eigen-systems and projections onto them.

Builders produce truncated orthonormal bases for the standard solvable models
(periodic free particle, square well, harmonic oscillator, relativistic
two-branch plane waves, Helmholtz box).  Every basis carries its grid, so
orthonormality and completeness are finite-matrix statements that the tests
and the acceptance suite check directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import Grid1D, SampledFunction

__all__ = [
    "PhysicalConstants",
    "EigenSystem",
    "Coefficients",
    "build_free_basis",
    "build_well_basis",
    "build_oscillator_basis",
    "build_relativistic_branches",
    "build_helmholtz_basis",
    "completeness_residual",
    "orthonormality_residual",
    "project_state",
    "reconstruct",
]


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.0
    c: float = 1.0
    mass: float = 1.0
    omega: float = 1.0
    epsilon0: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "c", "mass", "omega", "epsilon0"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class EigenSystem:
    """Truncated spectrum {E_n} with grid-sampled modes.

    mode_values has one row per retained mode.  branches is +-1 per mode for
    the relativistic two-branch spectrum, None otherwise.  For the two-branch
    case the spatial plane waves repeat across branches, so orthonormality
    only holds within a branch.
    """

    grid: Grid1D
    energies: np.ndarray
    mode_values: np.ndarray = field(repr=False)
    constants: PhysicalConstants
    model: str
    branches: np.ndarray | None = None

    def __post_init__(self):
        en = np.asarray(self.energies, dtype=float)
        mv = np.asarray(self.mode_values, dtype=complex)
        object.__setattr__(self, "energies", en)
        object.__setattr__(self, "mode_values", mv)
        if mv.shape != (en.size, self.grid.size):
            raise ValueError("mode count must equal energy count, sampled on the grid")
        if self.branches is not None:
            br = np.asarray(self.branches, dtype=int)
            object.__setattr__(self, "branches", br)
            if br.shape != en.shape:
                raise ValueError("one branch tag per mode")

    @property
    def size(self) -> int:
        return self.energies.size

    def mode(self, n: int) -> SampledFunction:
        return SampledFunction(self.grid, self.mode_values[n])


@dataclass(frozen=True)
class Coefficients:
    """Expansion coefficients of a state in an eigenbasis."""

    values: np.ndarray
    basis: EigenSystem

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", vals)
        if vals.shape != (self.basis.size,):
            raise ValueError("one coefficient per retained mode")
        if not np.all(np.isfinite(vals)):
            raise ValueError("coefficients must be finite")


def _sort_by_abs_energy(energies, modes, branches=None):
    order = np.lexsort((energies, np.abs(energies)))
    if branches is None:
        return energies[order], modes[order], None
    return energies[order], modes[order], branches[order]


def build_free_basis(
    length: float,
    n_max: int,
    constants: PhysicalConstants = PhysicalConstants(),
    n_points: int | None = None,
) -> EigenSystem:
    """Periodic plane waves e^{ikx}/sqrt(L), k = 2*pi*j/L for |j| <= n_max.

    Kinetic energies hbar^2 k^2 / 2m.  The default grid has 2*n_max+1 points,
    making the retained set discretely complete (Fourier-complete grid).
    """
    if not length > 0:
        raise ValueError("box length must be positive")
    if n_max < 1:
        raise ValueError("mode cutoff must be >= 1")
    m = n_points if n_points is not None else 2 * n_max + 1
    grid = Grid1D.periodic(length, m)
    j = np.arange(-n_max, n_max + 1)
    k = 2 * np.pi * j / length
    modes = np.exp(1j * np.outer(k, grid.points)) / np.sqrt(length)
    energies = constants.hbar**2 * k**2 / (2 * constants.mass)
    energies, modes, _ = _sort_by_abs_energy(energies, modes)
    return EigenSystem(grid, energies, modes, constants, "free")


def build_well_basis(
    width: float,
    n_max: int,
    constants: PhysicalConstants = PhysicalConstants(),
    n_points: int | None = None,
) -> EigenSystem:
    """Square-well modes sqrt(2/a) sin(n*pi*x/a), E_n = pi^2 hbar^2 n^2 / (2 m a^2).

    The default grid keeps n_max interior points, on which the retained sine
    set is exactly orthonormal and complete (discrete sine transform).
    """
    if not width > 0:
        raise ValueError("well width must be positive")
    if n_max < 1:
        raise ValueError("mode cutoff must be >= 1")
    m = n_points if n_points is not None else n_max
    grid = Grid1D.open_interval(0.0, width, m)
    n = np.arange(1, n_max + 1)
    modes = np.sqrt(2.0 / width) * np.sin(np.outer(n * np.pi / width, grid.points))
    modes = modes.astype(complex)
    energies = np.pi**2 * constants.hbar**2 * n**2 / (2 * constants.mass * width**2)
    return EigenSystem(grid, energies, modes, constants, "well")


def hermite_modes(x: np.ndarray, n_max: int, alpha: float) -> np.ndarray:
    """First n_max oscillator eigenfunctions on points x.

    Normalized three-term recurrence; avoids the factorial overflow of the
    textbook N_n H_n form past n ~ 85.
    """
    xi = alpha * x
    phi = np.zeros((n_max, x.size))
    phi[0] = np.sqrt(alpha) * np.pi**-0.25 * np.exp(-(xi**2) / 2)
    if n_max > 1:
        phi[1] = np.sqrt(2.0) * xi * phi[0]
    for n in range(1, n_max - 1):
        phi[n + 1] = np.sqrt(2.0 / (n + 1)) * xi * phi[n] - np.sqrt(n / (n + 1)) * phi[n - 1]
    return phi


def build_oscillator_basis(
    constants: PhysicalConstants = PhysicalConstants(),
    n_max: int = 32,
    n_points: int | None = None,
    extent: float | None = None,
    grid_kind: str = "uniform",
) -> EigenSystem:
    """Harmonic-oscillator eigenfunctions, E_n = (n + 1/2) hbar omega.

    grid_kind "uniform" samples a symmetric trapezoid grid wide enough that
    the last retained mode has decayed below 1e-10 at the ends.  grid_kind
    "gauss" uses the n_max-point Gauss-Hermite rule, on which the truncated
    basis is discretely orthonormal *and* complete -- the grid to use for
    initial-condition (completeness) checks.
    """
    if n_max < 1:
        raise ValueError("mode cutoff must be >= 1")
    alpha = np.sqrt(constants.mass * constants.omega / constants.hbar)
    if grid_kind == "gauss":
        m = n_points if n_points is not None else n_max
        if m < n_max:
            raise ValueError("Gauss grid needs at least n_max nodes")
        nodes, lam = np.polynomial.hermite.hermgauss(m)
        grid = Grid1D(nodes / alpha, lam * np.exp(nodes**2) / alpha, kind="open-interval")
    elif grid_kind == "uniform":
        # classical turning point of the last mode plus a decay buffer
        half = (np.sqrt(2 * n_max + 1) + 5.0) / alpha if extent is None else extent
        m = n_points if n_points is not None else max(64, int(np.ceil(16 * half * alpha * np.sqrt(2 * n_max) / np.pi)) | 1)
        grid = Grid1D.uniform(-half, half, m)
    else:
        raise ValueError(f"unknown grid_kind {grid_kind!r}")
    modes = hermite_modes(grid.points, n_max, alpha).astype(complex)
    if grid_kind == "uniform":
        edge = max(abs(modes[-1, 0]), abs(modes[-1, -1]))
        if edge > 1e-10:
            raise ValueError(
                f"grid too narrow: mode {n_max - 1} is {edge:.2e} at the boundary "
                "(needs < 1e-10); widen the extent"
            )
    energies = (np.arange(n_max) + 0.5) * constants.hbar * constants.omega
    return EigenSystem(grid, energies, modes, constants, "oscillator")


def build_relativistic_branches(
    constants: PhysicalConstants,
    k_cutoff: int,
    length: float,
    n_points: int | None = None,
) -> EigenSystem:
    """Two-branch relativistic spectrum +-sqrt(m^2 c^4 + c^2 hbar^2 k^2).

    Plane waves on a periodic box; every momentum appears twice, tagged +1
    and -1.  Spatial modes repeat across branches by construction.
    """
    if k_cutoff < 1:
        raise ValueError("momentum cutoff must be >= 1")
    if not length > 0:
        raise ValueError("box length must be positive")
    m = n_points if n_points is not None else 2 * k_cutoff + 1
    grid = Grid1D.periodic(length, m)
    j = np.arange(-k_cutoff, k_cutoff + 1)
    k = 2 * np.pi * j / length
    waves = np.exp(1j * np.outer(k, grid.points)) / np.sqrt(length)
    e_k = np.sqrt(constants.mass**2 * constants.c**4 + constants.c**2 * constants.hbar**2 * k**2)
    energies = np.concatenate([e_k, -e_k])
    modes = np.concatenate([waves, waves])
    branches = np.concatenate([np.ones_like(j), -np.ones_like(j)])
    energies, modes, branches = _sort_by_abs_energy(energies, modes, branches)
    return EigenSystem(grid, energies, modes, constants, "relativistic", branches=branches)


def build_helmholtz_basis(
    length: float,
    n_max: int,
    constants: PhysicalConstants = PhysicalConstants(),
    n_points: int | None = None,
) -> EigenSystem:
    """Plane-wave eigenfunctions of -d^2/dx^2 on a periodic box, E = k^2.

    These are H-eigenvalues of the wave operator, not energies; the zero mode
    (k = 0) is retained and handled as a limit by the wave kernels.
    """
    if not length > 0:
        raise ValueError("box length must be positive")
    if n_max < 1:
        raise ValueError("mode cutoff must be >= 1")
    m = n_points if n_points is not None else 2 * n_max + 1
    grid = Grid1D.periodic(length, m)
    j = np.arange(-n_max, n_max + 1)
    k = 2 * np.pi * j / length
    modes = np.exp(1j * np.outer(k, grid.points)) / np.sqrt(length)
    energies = k**2
    energies, modes, _ = _sort_by_abs_energy(energies, modes)
    return EigenSystem(grid, energies, modes, constants, "helmholtz")


def orthonormality_residual(basis: EigenSystem) -> float:
    """max |<phi_m, phi_n> - delta_mn| over retained pairs.

    For the two-branch relativistic basis the Gram matrix is taken within
    each branch; cross-branch pairs share spatial modes and are not expected
    to be orthogonal.
    """
    w = basis.grid.weights

    def gram_dev(mv):
        g = (mv * w) @ mv.conj().T
        return float(np.max(np.abs(g - np.eye(mv.shape[0]))))

    if basis.branches is None:
        return gram_dev(basis.mode_values)
    return max(
        gram_dev(basis.mode_values[basis.branches == s]) for s in (+1, -1)
    )


def completeness_residual(basis: EigenSystem) -> float:
    """Normalized distance of sum_n phi_n(x_i) phi_n*(x_j) from the grid delta.

    Returns max_ij |S_ij - delta_ij / w_j| * min(w): 0 for a discretely
    complete set, approaching 1 for a badly truncated one.
    """
    w = basis.grid.weights
    s = basis.mode_values.T @ np.conj(basis.mode_values)
    target = np.diag(1.0 / w)
    return float(np.max(np.abs(s - target)) * np.min(w))


def project_state(basis: EigenSystem, psi0: SampledFunction) -> Coefficients:
    """c_n = <phi_n, psi0> under the grid measure."""
    if psi0.grid != basis.grid:
        raise ValueError("state must live on the basis grid")
    c = np.conj(basis.mode_values) @ (basis.grid.weights * psi0.values)
    return Coefficients(c, basis)


def reconstruct(coeffs: Coefficients) -> SampledFunction:
    """sum_n c_n phi_n back on the grid."""
    vals = coeffs.values @ coeffs.basis.mode_values
    return SampledFunction(coeffs.basis.grid, vals)
