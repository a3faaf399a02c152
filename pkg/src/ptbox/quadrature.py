"""Cached Gauss-Legendre nodes and weights on [-1, 1].

Node computation is O(points^2) and shows up in profiles when an integral
is evaluated at many parameter values; the rules are immutable, so they are
computed once per point count and shared read-only.
"""

from __future__ import annotations

import functools

import numpy as np


@functools.lru_cache(maxsize=64)
def gauss_legendre(points: int) -> tuple[np.ndarray, np.ndarray]:
    y, w = np.polynomial.legendre.leggauss(points)
    y.setflags(write=False)
    w.setflags(write=False)
    return y, w
