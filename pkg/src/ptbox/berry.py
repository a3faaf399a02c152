"""Geometric phase of the adiabatically driven wall.

For a wall cycling through L(t) = a + b cos(omega t) the phase attached to
the instantaneous eigenstate Psi_n(x; L) is evaluated two ways:

* ``berry_phase_analytic`` is the closed-form expression

      gamma_n = i ln[ (alpha^2 (a-b)^2 + pi^2 n^2) / (alpha^2 (a+b)^2 + pi^2 n^2) ],

  purely imaginary with negative imaginary part, vanishing for b = 0 and in
  the alpha -> 0 limit.

* ``berry_phase_numeric`` integrates the wall-position connection

      f(L) = integral_{-L}^{L} Psi_n*(x; L) d/dL Psi_n(x; L) dx

  over one period as gamma = i * integral_0^T f(L(t)) |Ldot(t)| dt, with the
  x-integral by Gauss-Legendre quadrature and d/dL in closed form.

The two surfaces intentionally stay independent.  They do not agree: the
connection integral reduces exactly to

      f(L) = -pi^2 n^2 / ( L (L^2 alpha^2 + pi^2 n^2) )

(see ``berry_connection_closed_form``; the test suite confirms it against a
finite-difference oracle), whose loop integral is
``berry_phase_loop_closed_form``, a different logarithm than the analytic
expression above.  Both values and their discrepancy are reported side by
side rather than reconciled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import gauss_legendre
from .spectrum import normalization
from .trig import cospi, sinpi


@dataclass(frozen=True)
class BerryPhaseResult:
    """Analytic and quadrature geometric phase for one quantum number."""

    n: int
    a: float
    b: float
    alpha: float
    gamma_analytic: complex
    gamma_numeric: complex

    @property
    def discrepancy(self) -> float:
        return abs(self.gamma_analytic - self.gamma_numeric)


def _check_loop(n: int, a: float, b: float, alpha: float) -> None:
    if n < 1:
        raise ValueError(f"quantum number must be >= 1 (got {n})")
    if not (a > b >= 0.0):
        raise ValueError(f"need a > b >= 0 (got a={a}, b={b})")
    if not alpha > 0.0:
        raise ValueError(f"alpha must be > 0 (got {alpha})")


def berry_phase_analytic(n: int, a: float, b: float, alpha: float) -> complex:
    """Closed-form phase i*ln of the eigenstate-normalization ratio at the turning points."""
    _check_loop(n, a, b, alpha)
    c = math.pi**2 * n**2
    ratio = (alpha**2 * (a - b) ** 2 + c) / (alpha**2 * (a + b) ** 2 + c)
    return 1j * math.log(ratio)


def eigenfunction_wall_derivative(n: int, L: float, alpha: float, x):
    """d/dL of Psi_n(x; L) at fixed x, fully analytic.

    Differentiates the normalization A_n(L), the 1/L in the trigonometric
    arguments, and the i pi n / (L alpha) coefficient.
    """
    x = np.asarray(x, dtype=float)
    c = math.pi**2 * n**2
    A = normalization(n, L, alpha)
    dA = A * (c - L**2 * alpha**2) / (2.0 * L * (L**2 * alpha**2 + c))
    u = n * x / L
    s, co = sinpi(u), cospi(u)
    b_coef = math.pi * n / (L * alpha)
    arg_dL = -math.pi * n * x / L**2  # d/dL of (pi n x / L)
    du = arg_dL * co  # d/dL sin
    dco = -arg_dL * s  # d/dL cos
    dval = dA * (s + 1j * b_coef * co) + A * (
        du + 1j * (-b_coef / L) * co + 1j * b_coef * dco
    )
    return dval if np.ndim(x) else complex(dval)


def berry_connection(n: int, L: float, alpha: float, points: int | None = None) -> complex:
    """f(L) = integral Psi_n* dPsi_n/dL dx over the box, by Gauss-Legendre quadrature."""
    if n < 1:
        raise ValueError(f"quantum number must be >= 1 (got {n})")
    if not L > 0.0:
        raise ValueError(f"wall position must be > 0 (got {L})")
    if points is None:
        points = max(128, 8 * n + 64)
    yg, wg = gauss_legendre(points)
    x = L * yg
    w = L * wg
    A = normalization(n, L, alpha)
    u = n * x / L
    psi = A * (sinpi(u) + 1j * math.pi * n / (L * alpha) * cospi(u))
    dpsi = eigenfunction_wall_derivative(n, L, alpha, x)
    return complex(np.sum(w * np.conj(psi) * dpsi))


def berry_connection_closed_form(n: int, L: float, alpha: float) -> float:
    """Exact value of the connection integral: -pi^2 n^2 / (L (L^2 alpha^2 + pi^2 n^2)).

    Follows from the normalization identity integral |Psi_n|^2 dx = 1; kept
    as the independent check on the quadrature path.
    """
    c = math.pi**2 * n**2
    return -c / (L * (L**2 * alpha**2 + c))


def berry_phase_loop_closed_form(n: int, a: float, b: float, alpha: float) -> complex:
    """Exact loop integral i * 2 * integral_{a-b}^{a+b} f(L) dL of the connection."""
    _check_loop(n, a, b, alpha)
    c = math.pi**2 * n**2

    def antiderivative(L: float) -> float:
        return 0.5 * math.log((L**2 * alpha**2 + c) / L**2)

    return 2j * (antiderivative(a + b) - antiderivative(a - b))


def berry_phase_numeric(
    n: int,
    a: float,
    b: float,
    alpha: float,
    omega: float = 1.0,
    steps: int = 512,
) -> complex:
    """gamma = i * integral over one period of f(L(t)) |Ldot(t)| dt.

    |Ldot| has a kink where the wall turns around, so the period is split at
    T/2 and each smooth half gets a Gauss-Legendre rule with steps/2 nodes.
    The result is independent of omega (pure change of parametrization).
    """
    _check_loop(n, a, b, alpha)
    if not omega > 0.0:
        raise ValueError(f"omega must be > 0 (got {omega})")
    if steps < 256:
        raise ValueError(f"need steps >= 256 (got {steps})")
    if b == 0.0:
        return 0j

    half_nodes = steps // 2
    period = 2.0 * math.pi / omega
    total = 0.0 + 0.0j
    for lo, hi in ((0.0, period / 2.0), (period / 2.0, period)):
        yg, wg = gauss_legendre(half_nodes)
        t = 0.5 * (hi - lo) * yg + 0.5 * (hi + lo)
        w = 0.5 * (hi - lo) * wg
        Lt = a + b * np.cos(omega * t)
        abs_Ldot = np.abs(-b * omega * np.sin(omega * t))
        f = np.array([berry_connection(n, float(L), alpha) for L in Lt])
        total += complex(np.sum(w * f * abs_Ldot))
    return 1j * total


def compute_phases(
    n_values,
    a: float,
    b: float,
    alpha: float,
    omega: float = 1.0,
    steps: int = 512,
) -> list[BerryPhaseResult]:
    """Analytic and quadrature phases side by side for a set of quantum numbers."""
    out = []
    for n in n_values:
        out.append(
            BerryPhaseResult(
                n=n,
                a=a,
                b=b,
                alpha=alpha,
                gamma_analytic=berry_phase_analytic(n, a, b, alpha),
                gamma_numeric=berry_phase_numeric(n, a, b, alpha, omega, steps),
            )
        )
    return out
