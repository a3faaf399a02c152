"""Time integration of the Galerkin mode system for the Robin-wall box.

After the coordinate stretch y = x / L(t) and the gauge factor
exp(-i alpha L(t) y), the wavefunction is expanded over the Neumann cosine
basis, psi(y, t) = sum_n C_n(t) phi_n(y), and the PDE collapses to

    i L^2 dC_n/dt = (pi^2 n^2 + alpha^2 L^2) / 2 * C_n + sum_m V[n, m] C_m

with the coupling matrix V from :mod:`ptbox.coupling`.  The marcher is a
classical fixed-step RK4 (default) or a step-doubling adaptive RK4; samples
are produced by stepping exactly onto the sample times.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import coupling, spectrum
from .quadrature import gauss_legendre
from .core import InitialStateKind, SimulationConfig, ensure_positive_horizon


class IntegrationError(RuntimeError):
    """Non-finite state or step-size underflow during a run."""


@dataclass(frozen=True)
class ModeCoefficients:
    """State of the expansion at one instant: c[n] = C_n(t), slot 0 = constant mode."""

    t: float
    c: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=complex)
        object.__setattr__(self, "c", c)
        if not np.all(np.isfinite(c.view(float))):
            raise IntegrationError(f"non-finite mode coefficients at t={self.t:g}")


@dataclass
class EvolutionRecord:
    """Sampled trajectory of the mode coefficients plus integrator diagnostics."""

    times: np.ndarray
    coefficients: np.ndarray  # shape (n_samples, n_modes)
    config: SimulationConfig
    steps_taken: int
    max_error_estimate: float | None = None
    initial_residual: float = 0.0

    def samples(self):
        for t, c in zip(self.times, self.coefficients):
            yield ModeCoefficients(float(t), c)

    def sample(self, i: int) -> ModeCoefficients:
        return ModeCoefficients(float(self.times[i]), self.coefficients[i])


def rhs(t: float, c: np.ndarray, config: SimulationConfig) -> np.ndarray:
    """dC/dt = (-i/L^2) [ (pi^2 n^2 + alpha^2 L^2)/2 * C + V C ]."""
    traj = config.trajectory
    L = traj.position(t)
    Ldot = traj.velocity(t)
    n = np.arange(config.n_modes)
    diag = (math.pi**2 * n**2 + config.alpha**2 * L**2) / 2.0
    V = coupling.coupling_matrix(L, Ldot, config.alpha, config.n_modes)
    return (-1j / L**2) * (diag * c + V @ c)


def rk4_step(f, t: float, y: np.ndarray, h: float) -> np.ndarray:
    """One classical Runge-Kutta step of size h (h may be negative)."""
    k1 = f(t, y)
    k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def project_initial_state(
    kind: InitialStateKind,
    index: int,
    L0: float,
    alpha: float,
    n_modes: int,
) -> tuple[np.ndarray, float]:
    """Initial coefficient vector and its truncation residual.

    ``neumann_mode(k)`` is the unit vector on slot k (residual 0).  For
    ``static_pt_eigenstate(n)`` the eigenfunction is carried into the frozen
    frame, psi(y) = exp(+i alpha L0 y) Psi_n(L0 y), and projected on the
    basis by Gauss-Legendre quadrature.  The residual

        1 - sum_m |C_m|^2 / integral |psi|^2 dy

    measures how much of the state the cosine basis cannot represent; a
    warning is emitted above 1e-6.  The basis spans only even functions of
    y, so eigenstate projections shed their odd part and the residual is
    genuinely large; it is reported, not hidden.
    """
    kind = InitialStateKind(kind)
    if kind is InitialStateKind.NEUMANN_MODE:
        if not 0 <= index < n_modes:
            raise ValueError(f"mode index {index} outside [0, {n_modes})")
        c0 = np.zeros(n_modes, dtype=complex)
        c0[index] = 1.0
        return c0, 0.0

    if index < 1:
        raise ValueError(f"eigenstate quantum number must be >= 1 (got {index})")
    points = max(256, 8 * n_modes + 8 * int(math.ceil(alpha * L0 / math.pi)) + 64)
    y, w = gauss_legendre(points)
    psi0 = np.exp(1j * alpha * L0 * y) * spectrum.static_eigenfunction(
        index, L0, alpha, L0 * y
    )
    basis = spectrum.neumann_matrix(n_modes, y)  # (points, n_modes)
    c0 = basis.T @ (w * psi0)
    norm_y = float(np.sum(w * np.abs(psi0) ** 2))
    residual = 1.0 - float(np.sum(np.abs(c0) ** 2)) / norm_y
    if residual > 1e-6:
        warnings.warn(
            f"initial-state truncation residual {residual:.3e} exceeds 1e-6: the "
            "cosine basis drops the odd part of the eigenstate",
            stacklevel=2,
        )
    return c0, residual


def reconstruct_wavefunction(state: ModeCoefficients, traj, alpha: float, x):
    """Psi(x, t) = exp(-i alpha L y) sum_n C_n phi_n(y) with y = x / L(t)."""
    L = traj.position(state.t)
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > L * (1.0 + 1e-12)):
        raise ValueError(f"position outside the box: |x| > L(t)={L:g}")
    y = x / L
    modes = spectrum.neumann_matrix(state.c.size, y) @ state.c
    val = np.exp(-1j * alpha * L * y) * modes
    return val if np.ndim(x) else complex(val[0])


def _sample_times(t_final: float, sample_interval: float) -> np.ndarray:
    n = int(math.floor(t_final / sample_interval + 1e-9))
    ts = np.arange(n + 1) * sample_interval
    if ts[-1] < t_final - 1e-12 * max(1.0, t_final):
        ts = np.append(ts, t_final)
    else:
        ts[-1] = t_final
    return ts


def _march_fixed(f, y0, sample_times, dt):
    samples = [y0.copy()]
    y = y0
    steps = 0
    for t0, t1 in zip(sample_times[:-1], sample_times[1:]):
        span = t1 - t0
        n_full = int(math.floor(span / dt + 1e-12))
        t = t0
        for i in range(n_full):
            y = rk4_step(f, t, y, dt)
            t = t0 + (i + 1) * dt
            steps += 1
        if t < t1 - 1e-13 * max(1.0, t1):
            y = rk4_step(f, t, y, t1 - t)
            steps += 1
        if not np.all(np.isfinite(y.view(float))):
            raise IntegrationError(f"non-finite state while stepping to t={t1:g}")
        samples.append(y.copy())
    return np.array(samples), steps, None


def _march_adaptive(f, y0, sample_times, rtol):
    samples = [y0.copy()]
    y = y0
    steps = 0
    worst = 0.0
    h = (sample_times[-1] - sample_times[0]) / 1000.0
    for t0, t1 in zip(sample_times[:-1], sample_times[1:]):
        t = t0
        while t < t1 - 1e-13 * max(1.0, t1):
            h = min(h, t1 - t)
            if h < 1e-14 * max(1.0, abs(t)):
                raise IntegrationError(f"step size underflow at t={t:g}")
            big = rk4_step(f, t, y, h)
            half = rk4_step(f, t + 0.5 * h, rk4_step(f, t, y, 0.5 * h), 0.5 * h)
            scale = rtol * max(1.0, float(np.max(np.abs(y))))
            err = float(np.max(np.abs(big - half))) / 15.0
            if err <= scale:
                y = half
                t += h
                steps += 1
                worst = max(worst, err)
                factor = 5.0 if err == 0.0 else min(5.0, 0.9 * (scale / err) ** 0.2)
                h *= max(1.0, factor)
            else:
                h *= max(0.2, 0.9 * (scale / err) ** 0.2)
        if not np.all(np.isfinite(y.view(float))):
            raise IntegrationError(f"non-finite state while stepping to t={t1:g}")
        samples.append(y.copy())
    return np.array(samples), steps, worst


def integrate(config: SimulationConfig, c0: np.ndarray | None = None) -> EvolutionRecord:
    """Run the mode system over [0, t_final] and sample every sample_interval.

    The initial state comes from the configuration unless an explicit
    coefficient vector ``c0`` is supplied.  Deterministic for a given
    configuration.
    """
    dt = config.resolved_dt
    ensure_positive_horizon(config.trajectory, config.t_final, dt)

    residual = 0.0
    if c0 is None:
        c0, residual = project_initial_state(
            config.initial_kind,
            config.initial_index,
            config.trajectory.position(0.0),
            config.alpha,
            config.n_modes,
        )
    c0 = np.asarray(c0, dtype=complex)
    if c0.shape != (config.n_modes,):
        raise ValueError(f"initial state must have shape ({config.n_modes},)")

    def f(t, y):
        return rhs(t, y, config)

    ts = _sample_times(config.t_final, config.sample_interval)
    if config.rtol is not None:
        coeffs, steps, worst = _march_adaptive(f, c0, ts, config.rtol)
    else:
        coeffs, steps, worst = _march_fixed(f, c0, ts, dt)
    return EvolutionRecord(
        times=ts,
        coefficients=coeffs,
        config=config,
        steps_taken=steps,
        max_error_estimate=worst,
        initial_residual=residual,
    )
