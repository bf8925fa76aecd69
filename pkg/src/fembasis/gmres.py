"""Restarted GMRes with modified Gram-Schmidt Arnoldi and Givens rotations.

The core routine works on flat numpy arrays and an abstract matvec;
:func:`solve_system` bridges it to the multi-index world by flattening a
frozen :class:`~fembasis.containers.SparseSystem` and a rhs
:class:`~fembasis.containers.NestedVector` over the vector's scalar slots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .containers import NestedVector, SparseSystem
from .errors import ShapeMismatch


@dataclass(frozen=True)
class SolverConfig:
    """Krylov solver parameters (pin_pressure is consumed by the Stokes layer)."""

    restart: int = 100
    max_iterations: int = 5000
    tolerance: float = 1e-8
    pin_pressure: bool = False

    def __post_init__(self):
        if self.restart < 1:
            raise ValueError(f"restart must be >= 1, got {self.restart}")
        if self.max_iterations < 0:
            raise ValueError(f"max_iterations must be >= 0, got {self.max_iterations}")
        if not self.tolerance > 0.0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")


def gmres(matvec, b, *, restart=100, tol=1e-8, maxiter=5000, x0=None):
    """Solve A x = b with restarted GMRes.

    Arguments:
        matvec: callable mapping a vector to A times that vector.
        b: right hand side, 1d array.
        restart: Krylov space dimension per cycle.
        tol: relative residual target, measured as ||b - A x|| / ||b||.
        maxiter: total iteration (matvec) budget across restarts.
        x0: optional initial iterate; zero slots of x0 whose matrix row is
            an identity row stay exact through all iterations.

    Returns:
        (x, relative residual, iterations).  A zero rhs returns x = 0
        exactly with zero iterations.  Hitting the iteration budget is a
        reported outcome, not an error.
    """
    b = np.asarray(b, dtype=float)
    n = b.shape[0]
    bnorm = float(np.linalg.norm(b))
    if bnorm == 0.0:
        return np.zeros(n), 0.0, 0
    x = np.zeros(n) if x0 is None else np.asarray(x0, dtype=float).copy()
    iters = 0
    prev_rnorm = math.inf
    stalled = False
    while True:
        r = b - matvec(x)
        rnorm = float(np.linalg.norm(r))
        if rnorm / bnorm <= tol or iters >= maxiter:
            return x, rnorm / bnorm, iters
        if rnorm >= prev_rnorm and stalled:
            # a whole restart cycle brought no progress and Arnoldi broke
            # down: the Krylov space is exhausted, more cycles cannot help
            return x, rnorm / bnorm, iters
        prev_rnorm = rnorm
        stalled = False

        m = restart
        V = np.zeros((m + 1, n))
        H = np.zeros((m + 1, m))
        cs = np.zeros(m)
        sn = np.zeros(m)
        g = np.zeros(m + 1)
        g[0] = rnorm
        V[0] = r / rnorm
        k = 0
        while k < m and iters < maxiter:
            # copy: matvec may return its argument aliased (identity is legal)
            w = np.array(matvec(V[k]), dtype=float)
            norm_before = float(np.linalg.norm(w))
            for i in range(k + 1):
                hik = float(V[i] @ w)
                H[i, k] += hik
                w -= hik * V[i]
            # one re-orthogonalization pass when cancellation ate most of w
            if float(np.linalg.norm(w)) < norm_before / math.sqrt(2.0):
                for i in range(k + 1):
                    corr = float(V[i] @ w)
                    H[i, k] += corr
                    w -= corr * V[i]
            hk1 = float(np.linalg.norm(w))
            H[k + 1, k] = hk1
            if hk1 > 0.0:
                V[k + 1] = w / hk1

            for i in range(k):
                t = cs[i] * H[i, k] + sn[i] * H[i + 1, k]
                H[i + 1, k] = -sn[i] * H[i, k] + cs[i] * H[i + 1, k]
                H[i, k] = t
            denom = math.hypot(H[k, k], H[k + 1, k])
            iters += 1
            if denom == 0.0:
                # fully degenerate column; nothing to rotate, drop it
                stalled = True
                break
            cs[k] = H[k, k] / denom
            sn[k] = H[k + 1, k] / denom
            H[k, k] = denom
            H[k + 1, k] = 0.0
            g[k + 1] = -sn[k] * g[k]
            g[k] = cs[k] * g[k]
            k += 1
            if abs(g[k]) / bnorm <= tol:
                break
            if hk1 == 0.0:
                # happy breakdown: exact solution inside the current space
                stalled = True
                break

        y = np.zeros(k)
        for i in range(k - 1, -1, -1):
            if H[i, i] == 0.0:
                continue
            y[i] = (g[i] - H[i, i + 1 : k] @ y[i + 1 : k]) / H[i, i]
        if k:
            x = x + V[:k].T @ y


def flatten_layout(vector: NestedVector):
    """Scalar slot order of a nested vector: (paths, slot lookup dict)."""
    paths = list(vector.scalar_paths())
    return paths, {mi: i for i, mi in enumerate(paths)}


def solve_system(system: SparseSystem, rhs: NestedVector, config=None, x0=None):
    """Solve a frozen sparse system for a nested rhs.

    Returns (solution, relative residual, iterations) with the solution
    shaped like the rhs.  Row and column keys of the system must address
    scalar slots of the rhs shape.
    """
    cfg = config if config is not None else SolverConfig()
    paths, slot = flatten_layout(rhs)
    n = len(paths)
    b = np.fromiter((v for _, v in rhs.entries()), dtype=float, count=n)

    rows = []
    cols = []
    vals = []
    for r, c, v in system.triples():
        try:
            rows.append(slot[r])
            cols.append(slot[c])
        except KeyError as missing:
            raise ShapeMismatch(
                f"system key {missing.args[0]} has no slot in the rhs shape"
            ) from None
        vals.append(v)
    rows = np.asarray(rows, dtype=np.intp)
    cols = np.asarray(cols, dtype=np.intp)
    vals = np.asarray(vals, dtype=float)

    def matvec(v):
        return np.bincount(rows, weights=vals * v[cols], minlength=n)

    x0_flat = None
    if x0 is not None:
        x0_flat = np.fromiter((v for _, v in x0.entries()), dtype=float, count=n)

    x, relres, iters = gmres(
        matvec,
        b,
        restart=cfg.restart,
        tol=cfg.tolerance,
        maxiter=cfg.max_iterations,
        x0=x0_flat,
    )

    solution = rhs.zeros_like()
    for mi, value in zip(paths, x):
        solution[mi] = float(value)
    return solution, float(relres), iters
