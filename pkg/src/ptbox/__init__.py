"""Spectral-Galerkin simulator for a quantum particle in a box with imaginary
Robin walls and a moving boundary, with a Dirichlet baseline for contrast."""

__version__ = "0.1.0"

from .core import (
    ConfigError,
    InitialStateKind,
    SimulationConfig,
    TrajectoryError,
    TrajectoryKind,
    WallTrajectory,
    check_pt_symmetry,
    ensure_positive_horizon,
)
from .evolution import (
    EvolutionRecord,
    IntegrationError,
    ModeCoefficients,
    integrate,
    project_initial_state,
    reconstruct_wavefunction,
    rhs,
    rk4_step,
)
from .hermitian import HermitianConfig, hermitian_energy, hermitian_norm, integrate_hermitian
from .observables import ObservableSeries, build_series

__all__ = [
    "ConfigError",
    "EvolutionRecord",
    "HermitianConfig",
    "InitialStateKind",
    "IntegrationError",
    "ModeCoefficients",
    "ObservableSeries",
    "SimulationConfig",
    "TrajectoryError",
    "TrajectoryKind",
    "WallTrajectory",
    "build_series",
    "check_pt_symmetry",
    "ensure_positive_horizon",
    "hermitian_energy",
    "hermitian_norm",
    "integrate",
    "integrate_hermitian",
    "project_initial_state",
    "reconstruct_wavefunction",
    "rhs",
    "rk4_step",
]
