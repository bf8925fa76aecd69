"""Global bases over structured grids with configurable index merging.

A basis tree (see :mod:`fembasis.treespec`) turns into a global basis by
giving every leaf the global numbering of its Lagrange nodes on the grid
and then folding those flat numbers through the merging strategies of the
inner nodes, leaf to root.  The result assigns every basis function a
multi-index; the set of all of them forms a valid index tree.

The four strategies act on a child's multi-index ``childMI`` at child
position ``i`` as follows:

* BlockedLexicographic prepends:      (i, childMI...)
* BlockedInterleaved appends:         (childMI..., i)
* FlatLexicographic offsets digit 0:  (L_i + childMI[0], childMI[1:]...)
  with L_i the summed root degrees of the preceding children
* FlatInterleaved strides digit 0:    (childMI[0]*m + i, childMI[1:]...)
  with m the child count

Element-local access happens through :class:`LocalView`: binding it to an
element caches the multi-index of every element-local basis function.
Local indices enumerate the leaves depth-first and are consecutive within
each leaf.
"""

from __future__ import annotations

from .errors import (
    IndexOutOfRange,
    MergeProducesInvalidTree,
    PathOutOfRange,
    PrefixNotFound,
    UnboundView,
)
from .grid import StructuredGrid
from .localfe import lagrange_element
from .multiindex import MultiIndex, as_multi_index
from .treespec import BasisTree, Composite, Leaf, Power, Strategy, child_at


def merge_child_index(
    strategy: Strategy,
    child_index: int,
    child_mi,
    *,
    child_root_degrees=None,
    child_count=None,
) -> MultiIndex:
    """Merge one child multi-index into the parent numbering.

    ``child_root_degrees`` (root degree of every child's index tree, in
    child order) is required for FlatLexicographic; ``child_count`` for
    FlatInterleaved.  Flat strategies need a non-empty child multi-index.
    """
    mi = tuple(child_mi)
    if child_index < 0:
        raise IndexOutOfRange(f"negative child index {child_index}")
    if strategy is Strategy.BLOCKED_LEXICOGRAPHIC:
        return MultiIndex((child_index, *mi))
    if strategy is Strategy.BLOCKED_INTERLEAVED:
        return MultiIndex((*mi, child_index))
    if not mi:
        raise ValueError("flat strategies need a non-empty child multi-index")
    if strategy is Strategy.FLAT_LEXICOGRAPHIC:
        if child_root_degrees is None:
            raise ValueError("FlatLexicographic needs child_root_degrees")
        if child_index >= len(child_root_degrees):
            raise IndexOutOfRange(
                f"child index {child_index} outside {len(child_root_degrees)} children"
            )
        offset = sum(child_root_degrees[:child_index])
        return MultiIndex((offset + mi[0], *mi[1:]))
    if strategy is Strategy.FLAT_INTERLEAVED:
        if child_count is None:
            raise ValueError("FlatInterleaved needs child_count")
        if child_index >= child_count:
            raise IndexOutOfRange(
                f"child index {child_index} outside count {child_count}"
            )
        return MultiIndex((mi[0] * child_count + child_index, *mi[1:]))
    raise TypeError(f"not a strategy: {strategy!r}")


# ---------------------------------------------------------------------------
# index shapes
#
# The index tree of a basis is represented structurally: a node is a list of
# child shapes, a terminal (one basis function) is None.  Lists force the
# consecutive zero-based children property, so shapes composed by the rules
# below are valid index trees by construction; the conservation checks guard
# the composition itself.


def _shape_terminals(shape) -> int:
    if shape is None:
        return 1
    return sum(_shape_terminals(c) for c in shape)


def _append_digit(shape, m):
    # BlockedInterleaved: every terminal becomes a node with m terminals
    block = [None] * m
    def rec(node):
        return [block if c is None else rec(c) for c in node]
    return rec(shape)


def _merge_shapes(strategy: Strategy, shapes: list) -> list:
    """Compose child index shapes into the parent index shape."""
    if strategy is Strategy.BLOCKED_LEXICOGRAPHIC:
        merged = list(shapes)
    elif strategy is Strategy.BLOCKED_INTERLEAVED:
        merged = _append_digit(shapes[0], len(shapes))
    elif strategy is Strategy.FLAT_LEXICOGRAPHIC:
        merged = [child for s in shapes for child in s]
        if len(merged) != sum(len(s) for s in shapes):
            raise MergeProducesInvalidTree("flat merge lost a first digit")
    else:
        first, m = shapes[0], len(shapes)
        merged = [first[p // m] for p in range(len(first) * m)]
    total = sum(_shape_terminals(s) for s in shapes)
    if _shape_terminals(merged) != total:
        raise MergeProducesInvalidTree(
            f"merge changed the basis function count ({strategy.value})"
        )
    return merged


class _Node:
    """Per-tree-node bookkeeping: strategy context plus the index shape."""

    __slots__ = ("tree", "strategy", "count", "children", "shape", "child_degrees")

    def __init__(self, tree, strategy, count, children, shape, child_degrees):
        self.tree = tree
        self.strategy = strategy
        self.count = count
        self.children = children  # one entry per distinct child (power shares)
        self.shape = shape
        self.child_degrees = child_degrees

    @property
    def root_degree(self) -> int:
        return len(self.shape)

    def child(self, digit: int) -> "_Node":
        if self.strategy is None:
            raise PathOutOfRange("leaf nodes have no children")
        if not 0 <= digit < self.count:
            raise PathOutOfRange(f"digit {digit} outside {self.count} children")
        if len(self.children) == 1:
            return self.children[0]
        return self.children[digit]


def _build_node(tree: BasisTree, grid: StructuredGrid) -> _Node:
    if isinstance(tree, Leaf):
        k = tree.order
        n = (k * grid.nx + 1) * (k * grid.ny + 1)
        return _Node(tree, None, 0, (), [None] * n, ())
    if isinstance(tree, Power):
        child = _build_node(tree.child, grid)
        degrees = (child.root_degree,) * tree.count
        shape = _merge_shapes(tree.strategy, [child.shape] * tree.count)
        return _Node(tree, tree.strategy, tree.count, (child,), shape, degrees)
    children = [_build_node(c, grid) for c in tree.children]
    degrees = tuple(c.root_degree for c in children)
    shape = _merge_shapes(tree.strategy, [c.shape for c in children])
    return _Node(tree, tree.strategy, len(children), tuple(children), shape, degrees)


class _LeafPlacement:
    """One leaf of the basis tree placed on the grid."""

    __slots__ = ("path", "order", "fe", "steps", "size")

    def __init__(self, path, order, fe, steps, size):
        self.path = path
        self.order = order
        self.fe = fe
        self.steps = steps  # (strategy, digit, child_degrees, count), root first
        self.size = size  # flat global numbering size of this leaf

    def fold(self, flat: int) -> MultiIndex:
        mi = MultiIndex((flat,))
        for strategy, digit, degrees, count in reversed(self.steps):
            mi = merge_child_index(
                strategy, digit, mi, child_root_degrees=degrees, child_count=count
            )
        return mi


class GlobalBasis:
    """Function space basis of a basis tree over a structured grid.

    Immutable after construction; all mutable element-local state lives in
    the :class:`LocalView` objects it hands out.
    """

    def __init__(self, grid: StructuredGrid, tree: BasisTree):
        self.grid = grid
        self.tree = tree
        self._root = _build_node(tree, grid)
        self._leaves: list[_LeafPlacement] = []
        self._leaf_by_path: dict[tuple, _LeafPlacement] = {}
        self._collect_leaves(tree, self._root, (), [])
        self._dimension = sum(leaf.size for leaf in self._leaves)
        if self._dimension != _shape_terminals(self._root.shape):
            raise MergeProducesInvalidTree(
                "index shape does not cover every basis function exactly once"
            )

    def _collect_leaves(self, tree, node, path, steps):
        if isinstance(tree, Leaf):
            fe = lagrange_element(tree.order)
            placement = _LeafPlacement(path, tree.order, fe, tuple(steps), node.root_degree)
            self._leaves.append(placement)
            self._leaf_by_path[path] = placement
            return
        if isinstance(tree, Power):
            child = node.child(0)
            for i in range(tree.count):
                steps.append((tree.strategy, i, node.child_degrees, node.count))
                self._collect_leaves(tree.child, child, path + (i,), steps)
                steps.pop()
            return
        for i, subtree in enumerate(tree.children):
            steps.append((tree.strategy, i, node.child_degrees, node.count))
            self._collect_leaves(subtree, node.child(i), path + (i,), steps)
            steps.pop()

    # -- basis-like surface shared with SubspaceBasis ----------------------

    @property
    def root_basis(self) -> "GlobalBasis":
        return self

    @property
    def prefix_path(self) -> tuple:
        return ()

    def dimension(self) -> int:
        """Total number of basis functions (equals len of the index set)."""
        return self._dimension

    def size(self, prefix=()) -> int:
        """Degree of the index tree below ``prefix``; 0 at a full entry."""
        node = self._root.shape
        for depth, digit in enumerate(tuple(as_multi_index(prefix))):
            if node is None:
                raise PrefixNotFound(
                    f"prefix digit at position {depth} descends below an entry"
                )
            if not 0 <= digit < len(node):
                raise PrefixNotFound(f"digit {digit} at position {depth} out of range")
            node = node[digit]
        return 0 if node is None else len(node)

    def local_view(self) -> "LocalView":
        return LocalView(self, ())

    def leaf_paths(self) -> tuple:
        return tuple(leaf.path for leaf in self._leaves)

    def leaf_dof_index(self, leaf_path, flat: int) -> MultiIndex:
        """Global multi-index of flat basis function ``flat`` of one leaf.

        ``leaf_path`` must address a leaf of the basis tree; ``flat`` is the
        leaf's own global node number.
        """
        placement = self._leaf_by_path.get(tuple(leaf_path))
        if placement is None:
            child_at(self.tree, leaf_path)  # raises PathOutOfRange if invalid
            raise PathOutOfRange(f"path {tuple(leaf_path)} is not a leaf")
        if not 0 <= flat < placement.size:
            raise IndexOutOfRange(
                f"flat index {flat} outside leaf size {placement.size}"
            )
        return placement.fold(flat)


class LeafView:
    """One leaf of a local view: element and local numbering of its functions."""

    __slots__ = ("_view", "_placement", "rel_path", "offset")

    def __init__(self, view, placement, rel_path, offset):
        self._view = view
        self._placement = placement
        self.rel_path = rel_path
        self.offset = offset

    @property
    def tree_path(self) -> tuple:
        return self._placement.path

    @property
    def finite_element(self):
        return self._placement.fe

    @property
    def size(self) -> int:
        return self._placement.fe.count

    def local_index(self, k: int) -> int:
        """View-local index of this leaf's k-th element-local function."""
        if not 0 <= k < self.size:
            raise IndexOutOfRange(f"leaf-local index {k} outside size {self.size}")
        return self.offset + k

    def dof_position(self, k: int) -> tuple[float, float]:
        """Global coordinates of the k-th local Lagrange node (bound only)."""
        if not 0 <= k < self.size:
            raise IndexOutOfRange(f"leaf-local index {k} outside size {self.size}")
        geometry = self._view.geometry
        return geometry.transform(self._placement.fe.nodes[k])


class LocalView:
    """Element-local window onto a basis (or onto one of its subtrees).

    ``bind`` fixes the element and caches one multi-index per local basis
    function; ``index`` then answers from the cache.  Unbound views only
    answer structural queries (max_size, leaves).
    """

    def __init__(self, basis: GlobalBasis, prefix: tuple = ()):
        child_at(basis.tree, prefix)  # validates the prefix
        self._basis = basis
        self._prefix = tuple(prefix)
        n = len(self._prefix)
        scoped = [lf for lf in basis._leaves if lf.path[: n] == self._prefix]
        self._leaves = []
        offset = 0
        for placement in scoped:
            self._leaves.append(LeafView(self, placement, placement.path[n:], offset))
            offset += placement.fe.count
        self._max_size = offset
        self._element = None
        self._geometry = None
        self._indices: list[MultiIndex] = []

    @property
    def basis(self) -> GlobalBasis:
        return self._basis

    @property
    def prefix_path(self) -> tuple:
        return self._prefix

    @property
    def leaves(self) -> tuple:
        return tuple(self._leaves)

    @property
    def max_size(self) -> int:
        """Upper bound for size over all elements (exact on this grid)."""
        return self._max_size

    @property
    def bound(self) -> bool:
        return self._element is not None

    @property
    def element(self) -> int:
        if self._element is None:
            raise UnboundView("view is not bound to an element")
        return self._element

    @property
    def geometry(self):
        if self._geometry is None:
            raise UnboundView("view is not bound to an element")
        return self._geometry

    @property
    def size(self) -> int:
        if self._element is None:
            raise UnboundView("size requires a bound view")
        return len(self._indices)

    def bind(self, element: int) -> None:
        """Bind to an element and cache all global multi-indices."""
        grid = self._basis.grid
        i, j = grid.cell_coords(element)  # raises IndexOutOfRange
        indices = []
        for leaf in self._leaves:
            placement = leaf._placement
            k = placement.order
            row = k * grid.nx + 1
            for m in range(placement.fe.count):
                a = m % (k + 1)
                b = m // (k + 1)
                flat = (j * k + b) * row + (i * k + a)
                indices.append(placement.fold(flat))
        self._indices = indices
        self._element = element
        self._geometry = grid.element_geometry(element)

    def unbind(self) -> None:
        self._element = None
        self._geometry = None
        self._indices = []

    def index(self, local: int) -> MultiIndex:
        """Global multi-index of a local basis function of the bound element."""
        if self._element is None:
            raise UnboundView("index requires a bound view")
        if not 0 <= local < len(self._indices):
            raise IndexOutOfRange(
                f"local index {local} outside view size {len(self._indices)}"
            )
        return self._indices[local]

    def multi_indices(self) -> tuple:
        if self._element is None:
            raise UnboundView("multi_indices requires a bound view")
        return tuple(self._indices)


class SubspaceBasis:
    """A subtree of a global basis that keeps reporting root multi-indices.

    Local views enumerate only the leaves below ``prefix_path`` but hand out
    the unchanged multi-indices of the root basis, so coefficients always
    live in containers shaped for the root.
    """

    def __init__(self, root: GlobalBasis, prefix: tuple):
        child_at(root.tree, prefix)
        self._root = root
        self._prefix = tuple(prefix)

    @property
    def root_basis(self) -> GlobalBasis:
        return self._root

    @property
    def prefix_path(self) -> tuple:
        return self._prefix

    @property
    def grid(self) -> StructuredGrid:
        return self._root.grid

    def local_view(self) -> LocalView:
        return LocalView(self._root, self._prefix)


def make_basis(grid: StructuredGrid, tree: BasisTree) -> GlobalBasis:
    """Build the global basis of ``tree`` over ``grid``."""
    return GlobalBasis(grid, tree)


def subspace_basis(basis, path) -> SubspaceBasis:
    """Restrict a basis to the subtree at ``path``.

    Accepts a GlobalBasis or another SubspaceBasis (paths concatenate).
    The empty path yields a subspace that behaves like the full basis.
    """
    full = tuple(basis.prefix_path) + tuple(path)
    return SubspaceBasis(basis.root_basis, full)
