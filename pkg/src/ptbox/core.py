"""Wall trajectories, run configuration and validity checks.

The wall of the box sits at x = +/- L(t).  Four closed-form wall laws are
supported (units hbar = m = 1 throughout):

    static       L(t) = a
    harmonic     L(t) = a + b*cos(omega*t)
    expanding    L(t) = a + b*t**2
    contracting  L(t) = a - b*t**2

All four are even functions of t, which is what keeps the combined
parity/time-reversal symmetry of the boundary conditions intact.  Velocity
and acceleration are the exact analytic derivatives, never finite
differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np


class TrajectoryKind(str, Enum):
    STATIC = "static"
    HARMONIC = "harmonic"
    EXPANDING = "expanding"
    CONTRACTING = "contracting"


class TrajectoryError(ValueError):
    """Invalid trajectory parameters or evaluation outside the valid horizon."""


class ConfigError(ValueError):
    """Invalid run configuration; the message names the offending key."""


@dataclass(frozen=True)
class WallTrajectory:
    """Parametric wall law with analytic first and second derivatives.

    ``a`` is the mean (harmonic) or initial (quadratic laws) half-width,
    ``b`` the oscillation amplitude or quadratic acceleration coefficient,
    ``omega`` the angular frequency (harmonic only).  Instances are frozen
    and safe to share between concurrent runs.
    """

    kind: TrajectoryKind
    a: float = 10.0
    b: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", TrajectoryKind(self.kind))
        if not self.a > 0.0:
            raise TrajectoryError(f"a must be > 0 (got {self.a})")
        if self.b < 0.0:
            raise TrajectoryError(f"b must be >= 0 (got {self.b})")
        if self.kind is TrajectoryKind.HARMONIC:
            if not self.a > self.b:
                raise TrajectoryError(
                    f"harmonic law needs a > b for strict positivity (a={self.a}, b={self.b})"
                )
            if not self.omega > 0.0:
                raise TrajectoryError(f"omega must be > 0 (got {self.omega})")

    def position(self, t):
        """L(t).  Raises TrajectoryError if the wall law has collapsed (L <= 0)."""
        t = np.asarray(t, dtype=float)
        if self.kind is TrajectoryKind.STATIC:
            L = np.full_like(t, self.a)
        elif self.kind is TrajectoryKind.HARMONIC:
            L = self.a + self.b * np.cos(self.omega * t)
        elif self.kind is TrajectoryKind.EXPANDING:
            L = self.a + self.b * t * t
        else:
            L = self.a - self.b * t * t
        if np.any(L <= 0.0):
            tbad = float(np.atleast_1d(t)[np.argmax(np.atleast_1d(L) <= 0.0)])
            raise TrajectoryError(
                f"wall position L(t) <= 0 at t={tbad:g}: invalid horizon for {self.kind.value} law"
            )
        return L if L.ndim else float(L)

    def velocity(self, t):
        """dL/dt, analytic."""
        t = np.asarray(t, dtype=float)
        if self.kind is TrajectoryKind.STATIC:
            v = np.zeros_like(t)
        elif self.kind is TrajectoryKind.HARMONIC:
            v = -self.b * self.omega * np.sin(self.omega * t)
        elif self.kind is TrajectoryKind.EXPANDING:
            v = 2.0 * self.b * t
        else:
            v = -2.0 * self.b * t
        return v if v.ndim else float(v)

    def acceleration(self, t):
        """d2L/dt2, analytic."""
        t = np.asarray(t, dtype=float)
        if self.kind is TrajectoryKind.STATIC:
            acc = np.zeros_like(t)
        elif self.kind is TrajectoryKind.HARMONIC:
            acc = -self.b * self.omega**2 * np.cos(self.omega * t)
        elif self.kind is TrajectoryKind.EXPANDING:
            acc = np.full_like(t, 2.0 * self.b)
        else:
            acc = np.full_like(t, -2.0 * self.b)
        return acc if acc.ndim else float(acc)

    def characteristic_time(self, t_final: float) -> float:
        """Shortest relevant time scale, used for the default step size."""
        if self.kind is TrajectoryKind.HARMONIC:
            return 2.0 * math.pi / self.omega
        return t_final


def check_pt_symmetry(traj, t_grid: Iterable[float]) -> bool:
    """True iff L(t) == L(-t) exactly on every grid point.

    The built-in wall laws are even in t and always pass.  The check exists
    as a guard for externally supplied trajectory objects (anything with a
    ``position`` method).
    """
    for t in t_grid:
        if traj.position(float(t)) != traj.position(-float(t)):
            return False
    return True


def ensure_positive_horizon(traj: WallTrajectory, t_final: float, dt: float) -> float:
    """Scan L(t) on [0, t_final] and reject the run if it touches zero.

    Scan resolution is min(dt, t_final/1e4); cheap and conservative for the
    closed-form laws.  Returns the scanned minimum of L.
    """
    step = min(dt, t_final / 1.0e4)
    n = int(math.ceil(t_final / step)) + 1
    ts = np.linspace(0.0, t_final, n)
    try:
        L = np.asarray(traj.position(ts))
    except TrajectoryError as exc:
        raise TrajectoryError(f"run on [0, {t_final:g}] rejected: {exc}") from exc
    return float(L.min())


class InitialStateKind(str, Enum):
    NEUMANN_MODE = "neumann_mode"
    STATIC_PT_EIGENSTATE = "static_pt_eigenstate"


@dataclass(frozen=True)
class SimulationConfig:
    """Validated parameters of one evolution run of the Robin-wall box."""

    trajectory: WallTrajectory
    alpha: float = 1.0
    n_modes: int = 64
    t_final: float = 40.0
    dt: float | None = None
    rtol: float | None = None
    initial_kind: InitialStateKind = InitialStateKind.NEUMANN_MODE
    initial_index: int = 1
    sample_interval: float = 0.02

    def __post_init__(self):
        object.__setattr__(self, "initial_kind", InitialStateKind(self.initial_kind))
        if not self.alpha > 0.0:
            raise ConfigError(f"physics.alpha: must be > 0 (got {self.alpha})")
        if self.n_modes < 1:
            raise ConfigError(f"numerics.n_modes: must be >= 1 (got {self.n_modes})")
        if not self.t_final > 0.0:
            raise ConfigError(f"numerics.t_final: must be > 0 (got {self.t_final})")
        if not 0.0 < self.sample_interval <= self.t_final:
            raise ConfigError(
                "numerics.sample_interval: must satisfy 0 < sample_interval <= t_final "
                f"(got {self.sample_interval} with t_final={self.t_final})"
            )
        if self.dt is not None and not self.dt > 0.0:
            raise ConfigError(f"numerics.dt: must be > 0 (got {self.dt})")
        if self.rtol is not None and not self.rtol > 0.0:
            raise ConfigError(f"numerics.rtol: must be > 0 (got {self.rtol})")
        if self.dt is not None and self.rtol is not None:
            raise ConfigError("numerics: give either dt or rtol, not both")
        if self.initial_kind is InitialStateKind.STATIC_PT_EIGENSTATE:
            if self.initial_index < 1:
                raise ConfigError(
                    f"initial.index: eigenstate quantum number must be >= 1 (got {self.initial_index})"
                )
        elif not 0 <= self.initial_index < self.n_modes:
            raise ConfigError(
                f"initial.index: mode index must lie in [0, n_modes) (got {self.initial_index})"
            )

    @property
    def resolved_dt(self) -> float:
        """Fixed step: the configured dt, else min(1e-3, T_char/1000)."""
        if self.dt is not None:
            return self.dt
        return min(1.0e-3, self.trajectory.characteristic_time(self.t_final) / 1000.0)
