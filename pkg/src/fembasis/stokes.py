"""Stationary Stokes driven cavity with Taylor-Hood elements.

The weak form of -laplace(u) - grad(p) = 0, div(u) = 0 pairs a velocity
Laplacian block with symmetric velocity-pressure coupling built from
integrals of (grad phi_i)_k * theta_j.  The velocity lives in two
quadratic components, the pressure in one linear component, so every quad
element contributes a dense 22-by-22 matrix.  Boundary conditions fix the
velocity to (0,1) on the left wall and (0,0) elsewhere; rows of fixed
entries become identity rows.  The resulting symmetric-saddle system is
solved with restarted GMRes and written to an ASCII VTU file.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import GlobalBasis, make_basis, subspace_basis
from .containers import NestedVector, SparseSystem
from .errors import AlreadyFrozen
from .functions import evaluate_discrete, for_each_boundary_dof, interpolate_masked
from .gmres import SolverConfig, solve_system
from .grid import StructuredGrid
from .quadrature import tensor_rule
from .treespec import Composite, Leaf, Power, Strategy
from .vtu import write_vtu

VELOCITY_COMPONENTS = 2


def taylor_hood_tree(velocity_components: int = VELOCITY_COMPONENTS) -> Composite:
    """Quadratic velocity components paired with a linear pressure."""
    return Composite(
        (
            Power(Leaf(2), velocity_components, Strategy.BLOCKED_INTERLEAVED),
            Leaf(1),
        ),
        Strategy.BLOCKED_LEXICOGRAPHIC,
    )


def driven_cavity_data(point):
    """Dirichlet velocity: (0,1) on the left wall, zero elsewhere.

    The left-wall value wins at the corners.
    """
    x = point[0]
    if x <= 1e-8:
        return (0.0, 1.0)
    return (0.0, 0.0)


def _split_taylor_hood_leaves(view):
    leaves = view.leaves
    if len(leaves) < 2:
        raise ValueError("Taylor-Hood view needs velocity and pressure leaves")
    vel, press = leaves[:-1], leaves[-1]
    orders = {leaf.finite_element.order for leaf in vel}
    if len(vel) != VELOCITY_COMPONENTS or orders != {2} or press.finite_element.order != 1:
        raise ValueError(
            "expected two quadratic velocity leaves and one linear pressure leaf"
        )
    return vel, press


def assemble_element_matrix(view, geometry, quad_points: int = 3) -> np.ndarray:
    """Dense element matrix of the Stokes bilinear forms on one element.

    ``view`` must be a bound Taylor-Hood local view.  The velocity blocks
    get the component-wise Laplacian, the velocity-pressure couplings get
    the divergence pairing in both symmetric positions, and the
    pressure-pressure block stays structurally present but zero.
    """
    vel, press = _split_taylor_hood_leaves(view)
    fe_v = vel[0].finite_element
    fe_p = press.finite_element
    n = view.max_size
    A = np.zeros((n, n))
    points, weights = tensor_rule(quad_points)
    scale = np.array([1.0 / geometry.hx, 1.0 / geometry.hy])
    detj = geometry.jacobian_determinant
    voffsets = [leaf.offset for leaf in vel]
    poff = press.offset
    nv, npr = fe_v.count, fe_p.count
    for point, w in zip(points, weights):
        grads = fe_v.gradients(point) * scale
        theta = fe_p.values(point)
        factor = w * detj
        laplace = grads @ grads.T * factor
        for k, off in enumerate(voffsets):
            A[off : off + nv, off : off + nv] += laplace
            coupling = np.outer(grads[:, k], theta) * factor
            A[off : off + nv, poff : poff + npr] += coupling
            A[poff : poff + npr, off : off + nv] += coupling.T
    return A


def assemble_stokes_matrix(
    basis: GlobalBasis, system: SparseSystem, quad_points: int = 3
) -> None:
    """Scatter all element matrices into ``system`` (must be empty).

    Writes every entry of every element matrix, including the structural
    zeros of the pressure-pressure block.
    """
    if system.frozen:
        raise AlreadyFrozen("cannot assemble into a frozen system")
    if len(system):
        raise ValueError("assembly expects an empty system")
    grid = basis.grid
    view = basis.local_view()
    for e in range(grid.num_elements):
        view.bind(e)
        element_matrix = assemble_element_matrix(view, view.geometry, quad_points)
        indices = view.multi_indices()
        for i, row in enumerate(indices):
            for j, col in enumerate(indices):
                system.add_to_entry(row, col, element_matrix[i, j])


def apply_dirichlet(
    system: SparseSystem,
    rhs: NestedVector,
    basis: GlobalBasis,
    boundary_values=driven_cavity_data,
    pin_pressure: bool = False,
) -> None:
    """Strongly enforce boundary velocities on the assembled system.

    Marks every velocity boundary node, writes the interpolated boundary
    data into the rhs through the mask, and turns the marked rows into
    identity rows.  With ``pin_pressure`` the first pressure entry is fixed
    to zero the same way.
    """
    velocity = subspace_basis(basis, (0,))
    mask = NestedVector()
    mask.resize_from_basis(basis, fill=False)
    marked = []
    seen = set()

    def mark(mi):
        if mi not in seen:
            seen.add(mi)
            marked.append(mi)
            mask[mi] = True

    for_each_boundary_dof(velocity, mark)
    interpolate_masked(velocity, rhs, boundary_values, mask)
    for mi in marked:
        system.set_row_to_identity(mi)
    if pin_pressure:
        first_pressure = basis.leaf_dof_index((1,), 0)
        system.set_row_to_identity(first_pressure)
        rhs[first_pressure] = 0.0


def weak_divergence_norm(system: SparseSystem, solution: NestedVector) -> float:
    """2-norm of the pressure-row residual block applied to the solution.

    Pressure rows (leading digit 1) hold the divergence pairing and are
    untouched by the Dirichlet rewrite, so this measures how far the
    discrete velocity is from weak divergence-freedom.
    """
    product = system.matvec(solution)
    total = 0.0
    for mi, value in product.entries():
        if mi and mi[0] == 1:
            total += float(value) ** 2
    return math.sqrt(total)


@dataclass
class CavitySummary:
    """Outcome of one driven cavity run, plus handles for inspection."""

    dimension: int
    iterations: int
    rel_residual: float
    divergence_norm: float
    rhs_norm: float
    converged: bool
    vtu_path: str
    grid: StructuredGrid
    basis: GlobalBasis
    solution: NestedVector

    @property
    def summary_line(self) -> str:
        return (
            f"dim={self.dimension} iters={self.iterations} "
            f"relres={self.rel_residual:.3e} div={self.divergence_norm:.3e}"
        )


def run_driven_cavity(nx: int, ny: int, config=None, out_path="cavity.vtu") -> CavitySummary:
    """Assemble, solve and write the driven cavity on an nx-by-ny grid.

    Prints the one-line summary (dim/iters/relres/div) and returns the
    full summary object.
    """
    cfg = config if config is not None else SolverConfig()
    grid = StructuredGrid(nx, ny)
    basis = make_basis(grid, taylor_hood_tree())

    system = SparseSystem()
    assemble_stokes_matrix(basis, system)
    rhs = NestedVector()
    rhs.resize_from_basis(basis)
    apply_dirichlet(system, rhs, basis, driven_cavity_data, cfg.pin_pressure)
    system.freeze()

    # starting from the rhs keeps identity rows exact from the first
    # iterate on, so boundary values survive the solve bitwise
    solution, relres, iterations = solve_system(system, rhs, cfg, x0=rhs)

    divergence = weak_divergence_norm(system, solution)
    rhs_norm = math.sqrt(sum(float(v) ** 2 for _, v in rhs.entries()))

    velocity = subspace_basis(basis, (0,))
    pressure = subspace_basis(basis, (1,))

    def velocity_at(p):
        return evaluate_discrete(velocity, solution, p)

    def pressure_at(p):
        return evaluate_discrete(pressure, solution, p)

    write_vtu(grid, velocity_at, pressure_at, out_path)

    summary = CavitySummary(
        dimension=basis.dimension(),
        iterations=iterations,
        rel_residual=relres,
        divergence_norm=divergence,
        rhs_norm=rhs_norm,
        converged=relres <= cfg.tolerance,
        vtu_path=str(out_path),
        grid=grid,
        basis=basis,
        solution=solution,
    )
    print(summary.summary_line)
    return summary
