"""sin(pi*z) and cos(pi*z) with exact zeros on the integer / half-integer lattice.

Plain ``np.sin(np.pi * n)`` carries the rounding error of ``np.pi * n`` and
returns values of order ``n * eps`` instead of zero.  Boundary-condition
residuals and mode values at the wall need the exact zeros, so the argument
is reduced modulo the period before the library call.
"""

from __future__ import annotations

import numpy as np


def sinpi(z):
    """Return sin(pi*z), exactly 0.0 for integer z."""
    z = np.asarray(z, dtype=float)
    r = z - 2.0 * np.round(z / 2.0)  # r in [-1, 1]
    r = np.where(r > 0.5, 1.0 - r, r)
    r = np.where(r < -0.5, -1.0 - r, r)
    out = np.sin(np.pi * r)
    return out if out.ndim else float(out)


def cospi(z):
    """Return cos(pi*z), exactly 0.0 for half-integer z."""
    z = np.asarray(z, dtype=float)
    return sinpi(z + 0.5)
