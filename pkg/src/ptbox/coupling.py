"""Overlap integrals of the Neumann basis and the moving-wall coupling matrix.

Projecting the stretched-box equation onto phi_n produces two families of
overlap integrals over y in [-1, 1]:

    I1[n, m] = integral phi_n(y) sin(pi m y) dy          = 0   (odd integrand)
    I2[n, m] = integral y phi_n(y) sin(pi m y) dy

with closed forms for n, m >= 1

    I2[n, n] = -1 / (2 pi n)
    I2[n, m] = -(-1)^(m+n) / (pi (m+n)) - (-1)^(m-n) / (pi (m-n)),  n != m,

and, for the constant mode phi_0 = 1/sqrt(2),

    I2[0, m] = -sqrt(2) (-1)^m / (pi m).

Column m = 0 never contributes (sin(0) = 0).  The time-dependent coupling is
assembled from these tables and the instantaneous wall data:

    V[n, m] = -i L pi m (alpha I1[n, m] + Ldot I2[n, m]),

purely imaginary, identically zero for a static wall.  An independent
Gauss-Legendre oracle evaluates the same integrals by quadrature so closed
form and quadrature can arbitrate each other.
"""

from __future__ import annotations

import functools
import math

import numpy as np

from .quadrature import gauss_legendre
from .spectrum import neumann_mode

_GRAM_TOL = 1e-10


class OracleConvergenceError(RuntimeError):
    """Quadrature oracle failed to stabilize under point doubling."""


def overlap_i1(n: int, m: int) -> float:
    """I1[n, m]: zero for every n, m (even function times sine over [-1, 1])."""
    if n < 0 or m < 0:
        raise ValueError("mode indices must be >= 0")
    return 0.0


def overlap_i2(n: int, m: int) -> float:
    """Closed form of I2[n, m] for n >= 0, m >= 1."""
    if n < 0:
        raise ValueError(f"first index must be >= 0 (got {n})")
    if m < 1:
        raise ValueError(f"second index must be >= 1 (got {m})")
    if n == 0:
        return -math.sqrt(2.0) * (-1.0) ** m / (math.pi * m)
    if n == m:
        return -1.0 / (2.0 * math.pi * n)
    return (
        -((-1.0) ** (m + n)) / (math.pi * (m + n))
        - ((-1.0) ** (m - n)) / (math.pi * (m - n))
    )


@functools.lru_cache(maxsize=None)
def i2_table(n_modes: int) -> np.ndarray:
    """Full I2 table for slots 0..n_modes-1, cached and frozen.

    The m = 0 column is stored as zero, matching the identically vanishing
    integral with sin(0) = 0.
    """
    N = n_modes
    tab = np.zeros((N, N))
    for n in range(N):
        for m in range(1, N):
            tab[n, m] = overlap_i2(n, m)
    tab.setflags(write=False)
    return tab


def coupling_matrix(L: float, Ldot: float, alpha: float, n_modes: int) -> np.ndarray:
    """Assemble V[n, m] = -i L pi m (alpha I1 + Ldot I2) as a fresh complex matrix.

    I1 vanishes identically, so every entry is purely imaginary, linear in
    both L and Ldot, and the matrix is the zero matrix whenever Ldot = 0.
    """
    if not L > 0.0:
        raise ValueError(f"wall position must be > 0 (got {L})")
    if n_modes < 1:
        raise ValueError(f"n_modes must be >= 1 (got {n_modes})")
    m = np.arange(n_modes)
    # alpha multiplies I1, which vanishes identically; only the Ldot term survives.
    real_part = L * math.pi * m[None, :] * (Ldot * i2_table(n_modes))
    return -1j * real_part


def _gauss_points(n: int, m: int, points: int | None) -> tuple[np.ndarray, np.ndarray]:
    if points is None:
        points = max(64, 4 * (n + m) + 32)
    if points < 64:
        raise ValueError(f"oracle needs >= 64 quadrature points (got {points})")
    return gauss_legendre(points)


def quadrature_overlap(weight: str, n: int, m: int, points: int | None = None) -> float:
    """Gauss-Legendre value of integral w(y) phi_n(y) sin(pi m y) dy, w in {one, y}."""
    if weight not in ("one", "y"):
        raise ValueError(f"weight must be 'one' or 'y' (got {weight!r})")
    y, w = _gauss_points(n, m, points)
    integrand = neumann_mode(n, y) * np.sin(np.pi * m * y)
    if weight == "y":
        integrand = y * integrand
    return float(np.sum(w * integrand))


def quadrature_gram(n: int, m: int, points: int | None = None) -> float:
    """Gauss-Legendre value of the Gram integral phi_n(y) phi_m(y) dy."""
    y, w = _gauss_points(n, m, points)
    return float(np.sum(w * neumann_mode(n, y) * neumann_mode(m, y)))


def converged_overlap(weight: str, n: int, m: int, points: int = 64) -> float:
    """Overlap oracle with a point-doubling convergence check.

    Doubles the node count until two successive values agree to 1e-10;
    raises OracleConvergenceError if that never happens (a configuration
    error, not a property of these smooth integrands).
    """
    pts = max(points, 4 * (n + m) + 32)
    prev = quadrature_overlap(weight, n, m, pts)
    for _ in range(6):
        pts *= 2
        cur = quadrature_overlap(weight, n, m, pts)
        if abs(cur - prev) <= _GRAM_TOL:
            return cur
        prev = cur
    raise OracleConvergenceError(
        f"overlap quadrature (weight={weight}, n={n}, m={m}) still moving by more "
        f"than {_GRAM_TOL:g} at {pts} points"
    )


def max_closed_form_discrepancy(n_max: int) -> float:
    """Largest |closed form - quadrature| of I2 over 1 <= n, m <= n_max."""
    worst = 0.0
    for n in range(1, n_max + 1):
        for m in range(1, n_max + 1):
            worst = max(worst, abs(overlap_i2(n, m) - quadrature_overlap("y", n, m)))
    return worst
