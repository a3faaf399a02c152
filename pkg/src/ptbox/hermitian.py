"""Baseline moving-wall box with hard (Dirichlet) walls on [0, L(t)].

Same strategy as the Robin-wall solver: stretch the domain with y = x / L(t)
and expand over the static basis chi_n(y) = sqrt(2) sin(pi n y), n >= 1,
orthonormal on [0, 1].  The mode system is

    dC_n/dt = -i pi^2 n^2 / (2 L^2) C_n + (Ldot / L) sum_m D[n, m] C_m,
    D[n, m] = integral_0^1 chi_n(y) y chi_m'(y) dy,

with D computed once by Gauss-Legendre quadrature and cached.  D + D^T = -I,
which makes the physical norm L(t) sum_n |C_n(t)|^2 a constant of motion;
this baseline is the norm-conserving contrast to the Robin-wall system.  A
contracting wall pumps energy into the particle (Fermi acceleration), an
expanding wall cools it.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .core import ConfigError, WallTrajectory, ensure_positive_horizon
from .quadrature import gauss_legendre
from .evolution import EvolutionRecord, _march_adaptive, _march_fixed, _sample_times


@dataclass(frozen=True)
class HermitianConfig:
    """Run parameters for the Dirichlet baseline (no Robin parameter)."""

    trajectory: WallTrajectory
    n_modes: int = 64
    t_final: float = 40.0
    dt: float | None = None
    rtol: float | None = None
    initial_index: int = 1
    sample_interval: float = 0.02

    def __post_init__(self):
        if self.n_modes < 1:
            raise ConfigError(f"numerics.n_modes: must be >= 1 (got {self.n_modes})")
        if not self.t_final > 0.0:
            raise ConfigError(f"numerics.t_final: must be > 0 (got {self.t_final})")
        if not 0.0 < self.sample_interval <= self.t_final:
            raise ConfigError(
                "numerics.sample_interval: must satisfy 0 < sample_interval <= t_final"
            )
        if self.dt is not None and self.rtol is not None:
            raise ConfigError("numerics: give either dt or rtol, not both")
        if not 1 <= self.initial_index <= self.n_modes:
            raise ConfigError(
                f"initial.index: mode number must lie in [1, n_modes] (got {self.initial_index})"
            )

    @property
    def resolved_dt(self) -> float:
        if self.dt is not None:
            return self.dt
        return min(1.0e-3, self.trajectory.characteristic_time(self.t_final) / 1000.0)


@functools.lru_cache(maxsize=None)
def stretch_table(n_modes: int) -> np.ndarray:
    """D[n, m] built by quadrature, indexed by slots 0..n_modes-1 <-> n = 1..n_modes."""
    points = 8 * n_modes + 64
    y, w = gauss_legendre(points)
    y = 0.5 * (y + 1.0)  # map [-1, 1] -> [0, 1]
    w = 0.5 * w
    n = np.arange(1, n_modes + 1)
    sin_ny = np.sqrt(2.0) * np.sin(np.pi * np.outer(n, y))  # chi_n(y)
    dchi_my = np.sqrt(2.0) * np.pi * n[:, None] * np.cos(np.pi * np.outer(n, y))
    tab = sin_ny @ ((w * y)[:, None] * dchi_my.T)
    tab.setflags(write=False)
    return tab


def hermitian_rhs(t: float, c: np.ndarray, config: HermitianConfig) -> np.ndarray:
    """dC/dt for the Dirichlet baseline."""
    traj = config.trajectory
    L = traj.position(t)
    Ldot = traj.velocity(t)
    n = np.arange(1, config.n_modes + 1)
    D = stretch_table(config.n_modes)
    return -1j * (math.pi**2 * n**2 / (2.0 * L**2)) * c + (Ldot / L) * (D @ c)


def hermitian_energy(c: np.ndarray, L: float) -> float:
    """<E> = sum_n pi^2 n^2 |C_n|^2 / (2 L^2); real and nonnegative."""
    if not L > 0.0:
        raise ValueError(f"wall position must be > 0 (got {L})")
    c = np.asarray(c)
    n = np.arange(1, c.size + 1)
    return float(np.sum(math.pi**2 * n**2 * np.abs(c) ** 2) / (2.0 * L**2))


def hermitian_norm(c: np.ndarray, L: float) -> float:
    """Physical norm: integral of |Psi|^2 over [0, L], equal to L sum |C_n|^2."""
    return float(L * np.sum(np.abs(np.asarray(c)) ** 2))


def integrate_hermitian(
    config: HermitianConfig, c0: np.ndarray | None = None
) -> EvolutionRecord:
    """March the Dirichlet mode system over [0, t_final]."""
    dt = config.resolved_dt
    ensure_positive_horizon(config.trajectory, config.t_final, dt)
    if c0 is None:
        c0 = np.zeros(config.n_modes, dtype=complex)
        c0[config.initial_index - 1] = 1.0
    c0 = np.asarray(c0, dtype=complex)
    if c0.shape != (config.n_modes,):
        raise ValueError(f"initial state must have shape ({config.n_modes},)")

    def f(t, y):
        return hermitian_rhs(t, y, config)

    ts = _sample_times(config.t_final, config.sample_interval)
    if config.rtol is not None:
        coeffs, steps, worst = _march_adaptive(f, c0, ts, config.rtol)
    else:
        coeffs, steps, worst = _march_fixed(f, c0, ts, dt)
    return EvolutionRecord(
        times=ts,
        coefficients=coeffs,
        config=config,  # type: ignore[arg-type]
        steps_taken=steps,
        max_error_estimate=worst,
    )
