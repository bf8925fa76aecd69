"""Grid functions over a basis: interpolation, boundary walks, evaluation.

All operations here accept either a GlobalBasis or a SubspaceBasis.  The
range values of functions mirror the basis subtree in scope: a leaf is
addressed by its tree path relative to that subtree, so a velocity-pressure
basis expects values like [[vx, vy], p] while its velocity subspace expects
[vx, vy].  Plain scalars broadcast to every leaf.
"""

from __future__ import annotations

import numbers

import numpy as np

from .errors import ShapeMismatch
from .grid import is_on_boundary
from .treespec import Composite, Leaf, Power, child_at


def _is_scalar(value) -> bool:
    return isinstance(value, (numbers.Real, np.floating, np.integer))


def _component(value, rel_path):
    """Leaf component of a range value; scalars broadcast to every leaf."""
    if _is_scalar(value):
        return value
    node = value
    for digit in rel_path:
        try:
            node = node[digit]
        except (TypeError, KeyError, IndexError):
            raise ShapeMismatch(
                f"range value has no component at relative path {tuple(rel_path)}"
            ) from None
    if not _is_scalar(node):
        raise ShapeMismatch(
            f"range value at relative path {tuple(rel_path)} is not a scalar"
        )
    return node


def _interpolate(basis, coefficients, fn, mask) -> None:
    grid = basis.root_basis.grid
    view = basis.local_view()
    for e in range(grid.num_elements):
        view.bind(e)
        geometry = view.geometry
        for leaf in view.leaves:
            fe = leaf.finite_element
            rel = leaf.rel_path

            def on_reference(ref):
                return _component(fn(geometry.transform(ref)), rel)

            nodal = fe.interpolate(on_reference)
            for m in range(fe.count):
                mi = view.index(leaf.local_index(m))
                if mask is None or mask[mi]:
                    coefficients[mi] = float(nodal[m])


def interpolate(basis, coefficients, fn) -> None:
    """Write the nodal interpolant of ``fn`` into ``coefficients``.

    ``fn`` maps global coordinates to a range value matching the subtree of
    ``basis`` (or to a scalar, which broadcasts).  Coefficients must be
    shaped for the root basis.  Shared nodes are visited once per adjacent
    element; all visits write the same value.
    """
    _interpolate(basis, coefficients, fn, None)


def interpolate_masked(basis, coefficients, fn, mask) -> None:
    """Interpolate ``fn`` but write only entries whose mask slot is true.

    The mask is authoritative per global entry: no write happens anywhere
    the mask is false, regardless of which elements visit the entry.
    """
    _interpolate(basis, coefficients, fn, mask)


def for_each_boundary_dof(basis, callback) -> None:
    """Invoke ``callback(multi_index)`` for every boundary node of ``basis``.

    Walks all elements, so multi-indices shared between elements are
    reported once per adjacent element; callers needing distinct entries
    collect into a set.  A node is a boundary node when its position lies
    on the boundary of the unit square.
    """
    grid = basis.root_basis.grid
    view = basis.local_view()
    for e in range(grid.num_elements):
        view.bind(e)
        for leaf in view.leaves:
            for m in range(leaf.size):
                if is_on_boundary(leaf.dof_position(m)):
                    callback(view.index(leaf.local_index(m)))


def _range_shell(tree):
    """Zero range value shaped like a basis subtree (scalar for a leaf)."""
    if isinstance(tree, Leaf):
        return 0.0
    if isinstance(tree, Power):
        return [_range_shell(tree.child) for _ in range(tree.count)]
    return [_range_shell(c) for c in tree.children]


def evaluate_discrete(basis, coefficients, point):
    """Value of the coefficient field of ``basis`` at a global point.

    Locates the containing element and combines shape function values with
    the stored coefficients.  Returns a scalar for a single-leaf subtree,
    nested lists otherwise.  Points outside the unit square raise
    OutsideDomain.
    """
    root = basis.root_basis
    element, local = root.grid.locate(point)
    view = basis.local_view()
    view.bind(element)
    subtree = child_at(root.tree, basis.prefix_path)
    result = _range_shell(subtree)
    for leaf in view.leaves:
        values = leaf.finite_element.values(local)
        acc = 0.0
        for m in range(leaf.size):
            acc += float(coefficients[view.index(leaf.local_index(m))]) * float(values[m])
        if not leaf.rel_path:
            result = acc
        else:
            target = result
            for digit in leaf.rel_path[:-1]:
                target = target[digit]
            target[leaf.rel_path[-1]] = acc
    return result
