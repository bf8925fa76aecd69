"""Tensor product Lagrange elements on the reference square [0,1]^2.

Order k places (k+1)^2 nodes at (a/k, b/k) for a, b in 0..k; the node with
local index m = b*(k+1) + a carries the shape function l_a(xi) * l_b(eta)
built from the one-dimensional Lagrange polynomials over the equispaced
nodes.  Orders 1 and 2 are supported.
"""

from __future__ import annotations

import numpy as np

from .errors import UnsupportedOrder


def _values_1d(nodes, x):
    n = len(nodes)
    out = np.empty(n)
    for a in range(n):
        v = 1.0
        for b in range(n):
            if b != a:
                v *= (x - nodes[b]) / (nodes[a] - nodes[b])
        out[a] = v
    return out


def _derivatives_1d(nodes, x):
    # l_a'(x) = sum_c 1/(x_a - x_c) * prod_{b != a,c} (x - x_b)/(x_a - x_b)
    n = len(nodes)
    out = np.empty(n)
    for a in range(n):
        total = 0.0
        for c in range(n):
            if c == a:
                continue
            term = 1.0 / (nodes[a] - nodes[c])
            for b in range(n):
                if b != a and b != c:
                    term *= (x - nodes[b]) / (nodes[a] - nodes[b])
            total += term
        out[a] = total
    return out


class LagrangeQk:
    """Scalar Lagrange element of tensor order ``order`` on the unit square."""

    def __init__(self, order: int):
        if order not in (1, 2):
            raise UnsupportedOrder(f"order {order} unsupported, expected 1 or 2")
        self.order = order
        self.count = (order + 1) ** 2
        self.nodes_1d = np.linspace(0.0, 1.0, order + 1)
        self.nodes = np.array(
            [(a / order, b / order) for b in range(order + 1) for a in range(order + 1)]
        )

    def values(self, point) -> np.ndarray:
        """All shape function values at a reference point, local node order."""
        xi, eta = point
        lx = _values_1d(self.nodes_1d, xi)
        ly = _values_1d(self.nodes_1d, eta)
        return np.outer(ly, lx).ravel()

    def gradients(self, point) -> np.ndarray:
        """Reference gradients, shape (count, 2)."""
        xi, eta = point
        lx = _values_1d(self.nodes_1d, xi)
        ly = _values_1d(self.nodes_1d, eta)
        dx = _derivatives_1d(self.nodes_1d, xi)
        dy = _derivatives_1d(self.nodes_1d, eta)
        out = np.empty((self.count, 2))
        out[:, 0] = np.outer(ly, dx).ravel()
        out[:, 1] = np.outer(dy, lx).ravel()
        return out

    def interpolate(self, fn) -> np.ndarray:
        """Nodal interpolation coefficients of a reference-coordinate function."""
        return np.array([float(fn(tuple(p))) for p in self.nodes])

    def __repr__(self):
        return f"LagrangeQk(order={self.order})"


_CACHE: dict[int, LagrangeQk] = {}


def lagrange_element(order: int) -> LagrangeQk:
    """Shared element instance per order (they are stateless)."""
    if order not in _CACHE:
        _CACHE[order] = LagrangeQk(order)
    return _CACHE[order]
