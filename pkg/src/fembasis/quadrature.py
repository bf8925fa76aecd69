"""Gauss-Legendre quadrature on the unit interval and unit square."""

from __future__ import annotations

import numpy as np


def gauss_legendre_unit(n: int) -> tuple[np.ndarray, np.ndarray]:
    """n-point Gauss-Legendre rule mapped from [-1,1] to [0,1]."""
    if n < 1:
        raise ValueError(f"quadrature needs at least one point, got {n}")
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


def tensor_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Tensor product of the n-point rule on the unit square.

    Returns points of shape (n*n, 2) and matching weights; exact for
    polynomials of degree 2n-1 per axis.
    """
    x, w = gauss_legendre_unit(n)
    points = np.array([(xa, xb) for xb in x for xa in x])
    weights = np.array([wa * wb for wb in w for wa in w])
    return points, weights
