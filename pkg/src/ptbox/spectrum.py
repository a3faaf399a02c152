"""Closed-form spectrum of the static box with imaginary Robin walls.

The stationary problem -psi''/2 = E psi on [-L, L] with boundary condition
psi' + i*alpha*psi = 0 at both walls has real eigenvalues

    E_n = pi^2 n^2 / (2 L^2),        n = 1, 2, ...

and eigenfunctions

    Psi_n(x) = A_n ( sin(pi n x / L) + (i pi n / (L alpha)) cos(pi n x / L) ),
    A_n      = sqrt( L alpha^2 / (L^2 alpha^2 + pi^2 n^2) ).

A_n makes the plain integral of |Psi_n|^2 over the box equal to one (checked
numerically in the test suite; no weighted inner product is involved).
n = 0 is excluded: it gives the zero function.

This module also provides the Neumann cosine basis used by the dynamical
solver after the wall has been frozen by the change of variables y = x/L:
phi_0 = 1/sqrt(2), phi_n(y) = cos(pi n y), orthonormal on [-1, 1].
"""

from __future__ import annotations

import math

import numpy as np

from .trig import cospi, sinpi

SQRT1_2 = 1.0 / math.sqrt(2.0)


def normalization(n: int, L: float, alpha: float) -> float:
    """A_n = sqrt(L alpha^2 / (L^2 alpha^2 + pi^2 n^2))."""
    if n < 1:
        raise ValueError(f"quantum number must be >= 1 (got {n})")
    return math.sqrt(L * alpha**2 / (L**2 * alpha**2 + math.pi**2 * n**2))


def static_eigenvalue(n: int, L: float) -> float:
    """E_n = pi^2 n^2 / (2 L^2).  Rejects n = 0 (zero function)."""
    if n < 1:
        raise ValueError(f"quantum number must be >= 1 (got {n})")
    if not L > 0.0:
        raise ValueError(f"box half-width must be > 0 (got {L})")
    return math.pi**2 * n**2 / (2.0 * L**2)


def static_eigenfunction(n: int, L: float, alpha: float, x):
    """Psi_n(x) for |x| <= L.  Vectorized over x."""
    if n < 1:
        raise ValueError(f"quantum number must be >= 1 (got {n})")
    if not alpha > 0.0:
        raise ValueError(f"alpha must be > 0 (got {alpha})")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > L * (1.0 + 1e-12)):
        raise ValueError("position outside the box: |x| > L")
    A = normalization(n, L, alpha)
    u = n * x / L
    val = A * (sinpi(u) + 1j * math.pi * n / (L * alpha) * cospi(u))
    return val if np.ndim(val) else complex(val)


def static_eigenfunction_derivative(n: int, L: float, alpha: float, x):
    """dPsi_n/dx, analytic."""
    x = np.asarray(x, dtype=float)
    A = normalization(n, L, alpha)
    u = n * x / L
    k = math.pi * n / L
    val = A * k * (cospi(u) - 1j * math.pi * n / (L * alpha) * sinpi(u))
    return val if np.ndim(val) else complex(val)


def robin_residual(n: int, L: float, alpha: float, side: int) -> complex:
    """Psi_n'(side*L) + i*alpha*Psi_n(side*L); zero for the exact eigenfunctions."""
    if side not in (+1, -1):
        raise ValueError(f"side must be +1 or -1 (got {side})")
    x = float(side) * L
    return complex(
        static_eigenfunction_derivative(n, L, alpha, x)
        + 1j * alpha * static_eigenfunction(n, L, alpha, x)
    )


def neumann_mode(n: int, y):
    """phi_n(y) on [-1, 1]: cos(pi n y) for n >= 1, the constant 1/sqrt(2) for n = 0.

    All modes satisfy phi'(+-1) = 0; the set is orthonormal under the plain
    integral over [-1, 1].
    """
    if n < 0:
        raise ValueError(f"mode index must be >= 0 (got {n})")
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(y) > 1.0 + 1e-12):
        raise ValueError("dimensionless coordinate outside [-1, 1]")
    if n == 0:
        val = np.full_like(y, SQRT1_2)
    else:
        val = cospi(n * y)
    return val if np.ndim(val) else float(val)


def neumann_matrix(n_modes: int, y) -> np.ndarray:
    """Matrix Phi[i, n] = phi_n(y_i), for vectorized synthesis of mode sums."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    out = np.empty((y.size, n_modes))
    out[:, 0] = SQRT1_2
    if n_modes > 1:
        n = np.arange(1, n_modes)
        out[:, 1:] = cospi(np.outer(y, n))
    return out
