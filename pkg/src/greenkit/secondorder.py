"""Second-order (wave-type) kernels, EM closed forms and source convolution.

The wave auxiliary kernel is G = c sum_n phi_n(x) phi_n*(x') sin(sqrt(E_n) c
tau) / sqrt(E_n): it vanishes at tau = 0 and its one-sided time derivative is
c^2 times the grid delta, which is how a point source switching on at t'
enters the equation.  The vacuum electromagnetic kernel is distributional, a
single outgoing (or incoming) pulse of amplitude 1/(4 pi R) at delay R/c,
carried here as a descriptor rather than a sampled delta.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .firstorder import Kernel, TimeWindow, theta
from .grid import Grid1D
from .spectra import EigenSystem, PhysicalConstants

__all__ = [
    "SourceField",
    "PulseDescriptor",
    "wave_auxiliary_kernel",
    "wave_step_factor_kernel",
    "kg_auxiliary_kernel",
    "em_kernel_closed_form",
    "field_from_source",
    "em_point_charge_field",
    "point_charge_potential",
    "wave_pde_residual",
]


@dataclass(frozen=True)
class SourceField:
    """Source density f(x, t) sampled on (grid x times)."""

    grid: Grid1D
    times: np.ndarray
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)
        if not np.all(np.diff(t) > 0):
            raise ValueError("time samples must be strictly increasing")
        if v.shape != (t.size, self.grid.size):
            raise ValueError("values must be (times x grid points)")
        if not np.all(np.isfinite(v)):
            raise ValueError("source values must be finite")


@dataclass(frozen=True)
class PulseDescriptor:
    """Distributional EM kernel entry: amplitude / delta(tau - arrival).

    direction retarded gives arrival R/c > 0, advanced -R/c.  width is the
    nascent-Gaussian width used when the pulse must be sampled.
    """

    amplitude: float
    arrival: float
    direction: str
    width: float = 0.0

    def sample(self, tau: np.ndarray) -> np.ndarray:
        """Nascent-Gaussian sampling of the pulse (width must be > 0)."""
        if self.width <= 0:
            raise ValueError("sampling needs a positive pulse width")
        g = np.exp(-((tau - self.arrival) ** 2) / (2 * self.width**2))
        return self.amplitude * g / (self.width * np.sqrt(2 * np.pi))


def _wave_frequencies(basis: EigenSystem, constants: PhysicalConstants) -> np.ndarray:
    """sqrt(E_n) for the spectral wave kernel; rejects negative eigenvalues."""
    if basis.model == "helmholtz":
        e = basis.energies
    elif basis.model == "relativistic":
        if not (basis.constants.hbar == 1.0 and basis.constants.c == 1.0):
            raise ValueError("Klein-Gordon kernel assumes hbar = c = 1 units")
        e = basis.energies**2
    else:
        raise ValueError(f"model {basis.model!r} is not a second-order model")
    if np.any(e < 0):
        raise ValueError("second-order kernel needs non-negative eigenvalues")
    return np.sqrt(e)


def wave_auxiliary_kernel(
    basis: EigenSystem,
    window: TimeWindow,
    constants: PhysicalConstants | None = None,
) -> Kernel:
    """G = c sum_n phi_n phi_n* sin(sqrt(E_n) c tau) / sqrt(E_n).

    The zero mode uses the removable-singularity limit sin(0 * )/0 -> c tau.
    Odd in tau by construction, zero at tau = 0 exactly.
    """
    constants = constants if constants is not None else basis.constants
    c = constants.c
    root_e = _wave_frequencies(basis, constants)
    if basis.model == "relativistic":
        # the two-branch basis duplicates each |E_k|; keep one copy per momentum
        keep = basis.branches > 0
        modes = basis.mode_values[keep]
        root_e = root_e[keep]
    else:
        modes = basis.mode_values
    conj_modes = np.conj(modes)
    zero = root_e == 0
    safe = np.where(zero, 1.0, root_e)
    blocks = np.empty((window.samples.size, basis.grid.size, basis.grid.size), dtype=complex)
    for i, tau in enumerate(window.samples):
        amp = np.where(zero, c * tau, c * np.sin(root_e * c * tau) / safe)
        blocks[i] = (modes.T * amp) @ conj_modes
    return Kernel(basis, window.samples, blocks, kind="auxiliary", order="second", convention="eq24")


def wave_step_factor_kernel(aux: Kernel, direction: str) -> Kernel:
    """theta(tau) G (retarded) or -theta(-tau) G (advanced) for wave kernels."""
    if aux.order != "second" or aux.kind != "auxiliary":
        raise ValueError("needs a second-order auxiliary kernel")
    if direction not in ("retarded", "advanced"):
        raise ValueError(f"unknown direction {direction!r}")
    fac = theta(aux.times) if direction == "retarded" else -theta(-aux.times)
    vals = aux.values * fac[:, None, None]
    return Kernel(aux.basis, aux.times, vals, kind=direction, order="second", convention="eq24")


def kg_auxiliary_kernel(basis: EigenSystem, window: TimeWindow) -> Kernel:
    """Klein-Gordon auxiliary kernel from the two-branch relativistic basis.

    Box-normalized sum over momenta of e^{ik dx} sin(E_k tau)/E_k with
    E_k = +sqrt(k^2 + m^2), in hbar = c = 1 units.
    """
    if basis.model != "relativistic":
        raise ValueError("needs the relativistic two-branch basis")
    return wave_auxiliary_kernel(basis, window)


def em_kernel_closed_form(
    separation: float,
    c: float,
    direction: str = "retarded",
    width: float = 0.0,
) -> PulseDescriptor:
    """Vacuum EM kernel between points a distance R apart.

    Amplitude 1/(4 pi R), pulse at tau = R/c (retarded) or -R/c (advanced).
    """
    if not separation > 0:
        raise ValueError("self-field is singular: separation must be positive")
    if direction not in ("retarded", "advanced"):
        raise ValueError(f"unknown direction {direction!r}")
    arrival = separation / c if direction == "retarded" else -separation / c
    return PulseDescriptor(1.0 / (4 * np.pi * separation), arrival, direction, width)


def field_from_source(kernel: Kernel, source: SourceField, eval_times: np.ndarray) -> np.ndarray:
    """psi(x, t) = sum over (x', t') of weights * G^R(x, x'; t - t') f(x', t').

    Spatial contraction uses the grid weights, time integration the trapezoid
    rule over the source samples.  Contributions with t' > t vanish through
    the retarded step factor, so a source in the future yields exactly zero.
    Returns an array of shape (eval_times, grid points).
    """
    if kernel.kind != "retarded":
        raise ValueError("field convolution uses the retarded kernel")
    basis = kernel.basis
    if source.grid != basis.grid:
        raise ValueError("source must live on the kernel grid")
    ts = source.times
    if ts[0] < kernel.times[0] - (kernel.times[-1] - kernel.times[0]):
        raise ValueError("source window extends outside the kernel window")
    if ts.size > 1:
        wt = np.empty_like(ts)
        dt = np.diff(ts)
        wt[0] = dt[0] / 2
        wt[-1] = dt[-1] / 2
        wt[1:-1] = (dt[:-1] + dt[1:]) / 2
    else:
        wt = np.array([1.0])
    eval_times = np.asarray(eval_times, dtype=float)
    out = np.zeros((eval_times.size, basis.grid.size), dtype=complex)
    root_e = _wave_frequencies(basis, basis.constants)
    if basis.model == "relativistic":
        keep = basis.branches > 0
        modes, root_e = basis.mode_values[keep], root_e[keep]
    else:
        modes = basis.mode_values
    c = basis.constants.c
    zero = root_e == 0
    safe = np.where(zero, 1.0, root_e)
    w = basis.grid.weights
    # project the source once: s_n(t') = <phi_n, f(., t')>
    s_modes = np.conj(modes) @ (w[:, None] * source.values.T)  # (n_modes, nt')
    for i, t in enumerate(eval_times):
        tau = t - ts
        step = theta(tau)
        amp = np.where(zero[:, None], c * tau[None, :], c * np.sin(np.outer(safe, c * tau)) / safe[:, None])
        coeff = np.sum(amp * step[None, :] * s_modes * wt[None, :], axis=1)
        out[i] = coeff @ modes
    return out


def point_charge_potential(q: float, eps0: float, r: float, t: float, c: float) -> float:
    """theta(t) * Q / (4 pi eps0 r) * theta(t - r/c), with theta(0) = 1/2.

    The potential of a charge switching on at the origin at t = 0: zero until
    the front arrives at t = r/c, the static Coulomb value afterwards.
    """
    if not r > 0:
        raise ValueError("potential is singular at r = 0")
    return float(theta(t) * q / (4 * np.pi * eps0 * r) * theta(t - r / c))


def em_point_charge_field(
    q: float,
    eps0: float,
    c: float,
    r: float,
    t_grid: np.ndarray,
    pulse_width: float = 0.0,
    source_times: np.ndarray | None = None,
) -> np.ndarray:
    """Potential of the switch-on point charge via the EM kernel convolution.

    pulse_width = 0 evaluates the time integral by the sifting property of
    the delta pulse (exact, including the half value on the front itself);
    pulse_width > 0 replaces the pulse by a nascent Gaussian and does the
    time quadrature numerically, as an independent cross-check.
    """
    pulse = em_kernel_closed_form(r, c, "retarded", width=pulse_width)
    t_grid = np.asarray(t_grid, dtype=float)
    profile = lambda s: q * theta(s) / eps0  # noqa: E731  source time factor of Eq-style Q theta(t)
    if pulse_width == 0:
        # psi(t) = amplitude * f(t - R/c); the retarded arrival already
        # enforces t' = t - R/c < t
        return pulse.amplitude * profile(t_grid - pulse.arrival)
    if source_times is None:
        span = max(t_grid[-1], pulse.arrival) + 8 * pulse_width
        source_times = np.linspace(-8 * pulse_width, span, 4001)
    out = np.empty_like(t_grid)
    f_src = profile(source_times)
    for i, t in enumerate(t_grid):
        g = pulse.sample(t - source_times) * theta(t - source_times)
        out[i] = np.trapezoid(g * f_src, source_times)
    return out


def wave_pde_residual(basis: EigenSystem, tau_grid: np.ndarray, constants: PhysicalConstants | None = None) -> float:
    """Max discrete residual of (-(1/c^2) d^2/dtau^2 - H) G on interior times.

    H acts spectrally (exact on the grid); the second time derivative is the
    centered difference, so the residual is O(dtau^2) and is reported for
    convergence monitoring.
    """
    constants = constants if constants is not None else basis.constants
    window = TimeWindow(np.asarray(tau_grid, dtype=float))
    kern = wave_auxiliary_kernel(basis, window, constants)
    t = kern.times
    if t.size < 3:
        raise ValueError("need at least three time samples")
    c2 = constants.c**2
    root_e = _wave_frequencies(basis, constants)
    if basis.model == "relativistic":
        keep = basis.branches > 0
        modes, root_e = basis.mode_values[keep], root_e[keep]
    else:
        modes = basis.mode_values
    conj_modes = np.conj(modes)
    worst = 0.0
    for i in range(1, t.size - 1):
        dt1, dt2 = t[i] - t[i - 1], t[i + 1] - t[i]
        d2 = (kern.values[i + 1] - kern.values[i]) / dt2 - (kern.values[i] - kern.values[i - 1]) / dt1
        d2 /= (dt1 + dt2) / 2
        zero = root_e == 0
        safe = np.where(zero, 1.0, root_e)
        amp = np.where(zero, 0.0, root_e**2 * constants.c * np.sin(root_e * constants.c * t[i]) / safe)
        h_g = (modes.T * amp) @ conj_modes
        worst = max(worst, float(np.max(np.abs(-d2 / c2 - h_g))))
    return worst
