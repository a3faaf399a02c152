"""Physical observables of the Robin-wall box from mode coefficients.

With the orthonormal cosine basis the headline quantities have closed forms
in the populations |C_n|^2:

    <E>  = (1 / 2L) sum_n (pi^2 n^2 + alpha^2 L^2) |C_n|^2
    <F>  = (1 / 2)  sum_n (pi^2 n^2 / L^2 - alpha^2) |C_n|^2  = -d<E>/dL
    N    = L sum_n |C_n|^2

The norm is not conserved: its exact rate reduces to a boundary expression,

    dN/dt = (Ldot + alpha) |Psi(+L)|^2 + (Ldot - alpha) |Psi(-L)|^2,

which the sampled series can be checked against.  <E> is reported both raw
and divided by the drifting norm; the CSV contract is

    t, L, Ldot, N, E_raw, E_over_N, F, x_avg, pop_0, ..., pop_{N-1}

with at least 15 significant digits per float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO

import numpy as np

from . import spectrum
from .quadrature import gauss_legendre
from .core import SimulationConfig
from .evolution import EvolutionRecord, ModeCoefficients, reconstruct_wavefunction

FLOAT_FMT = "%.17g"


def average_energy(c: np.ndarray, L: float, alpha: float) -> float:
    """Mean kinetic energy; reduces to sum pi^2 n^2 |C_n|^2 / (2L) at alpha = 0."""
    if not L > 0.0:
        raise ValueError(f"wall position must be > 0 (got {L})")
    c = np.asarray(c)
    n = np.arange(c.size)
    pops = np.abs(c) ** 2
    return float(np.sum((math.pi**2 * n**2 + alpha**2 * L**2) * pops) / (2.0 * L))


def average_force(c: np.ndarray, L: float, alpha: float) -> float:
    """Mean wall force, the negative wall-position derivative of the energy."""
    if not L > 0.0:
        raise ValueError(f"wall position must be > 0 (got {L})")
    c = np.asarray(c)
    n = np.arange(c.size)
    pops = np.abs(c) ** 2
    return float(0.5 * np.sum((math.pi**2 * n**2 / L**2 - alpha**2) * pops))


def norm(c: np.ndarray, L: float) -> float:
    """N = L sum |C_n|^2, the integral of |Psi|^2 over the box."""
    if not L > 0.0:
        raise ValueError(f"wall position must be > 0 (got {L})")
    return float(L * np.sum(np.abs(np.asarray(c)) ** 2))


def boundary_density(c: np.ndarray, side: int) -> float:
    """|Psi(side * L)|^2 = |sum_n C_n phi_n(side)|^2 (the gauge factor is unimodular)."""
    c = np.asarray(c)
    edge = spectrum.neumann_matrix(c.size, float(side))[0]
    return float(np.abs(edge @ c) ** 2)


def norm_rate_boundary(c: np.ndarray, traj, alpha: float, t: float) -> float:
    """dN/dt from the boundary formula at time t."""
    Ldot = traj.velocity(t)
    dens_plus = boundary_density(c, +1)
    dens_minus = boundary_density(c, -1)
    return float((Ldot + alpha) * dens_plus + (Ldot - alpha) * dens_minus)


def average_position(
    c: np.ndarray, traj, alpha: float, t: float, points: int = 256
) -> float:
    """<x> = Re integral Psi* x Psi dx / N by quadrature of the reconstruction.

    Normalized by the (drifting) norm.  Every basis mode is even in y, so
    the density is even and the value sits at quadrature-roundoff level for
    any state this model can represent.
    """
    L = traj.position(t)
    y, w = gauss_legendre(points)
    state = ModeCoefficients(t, c)
    psi = reconstruct_wavefunction(state, traj, alpha, L * y)
    dens = np.abs(psi) ** 2
    num = float(np.sum(w * L * (L * y) * dens))  # dx = L dy, x = L y
    den = float(np.sum(w * L * dens))
    return num / den


@dataclass
class ObservableSeries:
    """Time series of the observables for one run, aligned row-wise."""

    t: np.ndarray
    L: np.ndarray
    Ldot: np.ndarray
    N: np.ndarray
    E_raw: np.ndarray
    E_over_N: np.ndarray
    F: np.ndarray
    x_avg: np.ndarray
    populations: np.ndarray  # shape (n_samples, n_modes)

    def header(self) -> list[str]:
        n_modes = self.populations.shape[1]
        return [
            "t",
            "L",
            "Ldot",
            "N",
            "E_raw",
            "E_over_N",
            "F",
            "x_avg",
            *[f"pop_{k}" for k in range(n_modes)],
        ]

    def rows(self) -> np.ndarray:
        return np.column_stack(
            [
                self.t,
                self.L,
                self.Ldot,
                self.N,
                self.E_raw,
                self.E_over_N,
                self.F,
                self.x_avg,
                self.populations,
            ]
        )

    def write_csv(self, stream: IO[str]) -> None:
        stream.write(",".join(self.header()) + "\n")
        for row in self.rows():
            stream.write(",".join(FLOAT_FMT % v for v in row) + "\n")


def build_series(record: EvolutionRecord, position_points: int = 256) -> ObservableSeries:
    """Evaluate the observable columns on every sample of a finished run."""
    config: SimulationConfig = record.config
    traj = config.trajectory
    alpha = config.alpha
    ts = record.times
    C = record.coefficients
    n_modes = C.shape[1]

    L = np.asarray(traj.position(ts))
    Ldot = np.asarray(traj.velocity(ts))
    pops = np.abs(C) ** 2
    n2 = (math.pi**2) * np.arange(n_modes) ** 2

    sum_pops = pops.sum(axis=1)
    E_raw = (pops @ n2 + alpha**2 * L**2 * sum_pops) / (2.0 * L)
    N = L * sum_pops
    F = 0.5 * ((pops @ n2) / L**2 - alpha**2 * sum_pops)
    E_over_N = E_raw / N

    # <x> for all samples in one batched quadrature; the integrand is even
    # in y so this column measures roundoff, kept for the full contract.
    y, w = gauss_legendre(position_points)
    basis = spectrum.neumann_matrix(n_modes, y)  # (points, n_modes)
    psi_grid = basis @ C.T  # (points, n_samples)
    dens = np.abs(psi_grid) ** 2
    num = (w * y) @ dens * L**2
    den = w @ dens * L
    x_avg = num / den

    return ObservableSeries(
        t=ts,
        L=L,
        Ldot=Ldot,
        N=N,
        E_raw=E_raw,
        E_over_N=E_over_N,
        F=F,
        x_avg=x_avg,
        populations=pops,
    )
