"""Multi-index addressable containers: nested vectors and sparse systems.

A :class:`NestedVector` mirrors the index tree of a basis: navigating its
nested lists by the digits of a multi-index ends at exactly the scalar slot
of that basis function.  A :class:`SparseSystem` keys matrix entries by
(row, column) multi-index pairs; it accumulates during assembly and must be
frozen (sorted, immutable) before matrix-vector products.
"""

from __future__ import annotations

from .errors import AlreadyFrozen, NotFrozen, ShapeMismatch
from .multiindex import MultiIndex, as_multi_index


class NestedVector:
    """Nested lists of scalars shaped like the index tree of a basis."""

    __slots__ = ("_data",)

    def __init__(self, data=0.0):
        self._data = data

    @property
    def data(self):
        """The raw nested list structure (shared, not a copy)."""
        return self._data

    def resize_from_basis(self, basis, fill=0.0) -> None:
        """Shape this vector for (the root basis of) ``basis``.

        Every prefix with size n becomes a list of n slots; prefixes of
        size 0 become scalars initialized to ``fill``.  Existing content is
        discarded.
        """
        root = basis.root_basis

        def build(prefix):
            n = root.size(prefix)
            if n == 0:
                return fill
            return [build(prefix + (d,)) for d in range(n)]

        self._data = build(())

    def _navigate(self, key):
        digits = tuple(as_multi_index(key))
        node = self._data
        for depth, digit in enumerate(digits):
            if not isinstance(node, list):
                raise ShapeMismatch(
                    f"{MultiIndex(digits)} descends below a scalar at digit {depth}"
                )
            if not 0 <= digit < len(node):
                raise ShapeMismatch(
                    f"digit {digit} of {MultiIndex(digits)} outside list of length {len(node)}"
                )
            node = node[digit]
        return digits, node

    def __getitem__(self, key):
        digits, node = self._navigate(key)
        if isinstance(node, list):
            raise ShapeMismatch(f"{MultiIndex(digits)} is too short, addresses a list")
        return node

    def __setitem__(self, key, value) -> None:
        digits, node = self._navigate(key)
        if isinstance(node, list):
            raise ShapeMismatch(f"{MultiIndex(digits)} is too short, addresses a list")
        if not digits:
            self._data = value
            return
        parent = self._data
        for digit in digits[:-1]:
            parent = parent[digit]
        parent[digits[-1]] = value

    def entries(self):
        """Yield (multi-index, value) for every scalar slot, depth first."""

        def walk(node, path):
            if isinstance(node, list):
                for d, child in enumerate(node):
                    yield from walk(child, path + (d,))
            else:
                yield MultiIndex(path), node

        yield from walk(self._data, ())

    def scalar_paths(self):
        for mi, _ in self.entries():
            yield mi

    def copy(self) -> "NestedVector":
        def dup(node):
            if isinstance(node, list):
                return [dup(c) for c in node]
            return node

        return NestedVector(dup(self._data))

    def zeros_like(self) -> "NestedVector":
        def zero(node):
            if isinstance(node, list):
                return [zero(c) for c in node]
            return 0.0

        return NestedVector(zero(self._data))

    def __eq__(self, other):
        if not isinstance(other, NestedVector):
            return NotImplemented
        return self._data == other._data

    def __repr__(self):
        return f"NestedVector({self._data!r})"


class SparseSystem:
    """Sparse matrix keyed by (row, column) multi-index pairs.

    Lives in two phases: an accumulation phase (add_to_entry,
    set_row_to_identity) and, after freeze(), an immutable phase that
    supports deterministic matrix-vector products.
    """

    def __init__(self):
        self._rows: dict[MultiIndex, dict[MultiIndex, float]] = {}
        self._triples = None

    @property
    def frozen(self) -> bool:
        return self._triples is not None

    def _require_mutable(self):
        if self._triples is not None:
            raise AlreadyFrozen("system is frozen")

    def add_to_entry(self, row, col, value) -> None:
        """Accumulate ``value`` onto entry (row, col), creating it at 0."""
        self._require_mutable()
        r = as_multi_index(row)
        c = as_multi_index(col)
        cols = self._rows.setdefault(r, {})
        cols[c] = cols.get(c, 0.0) + float(value)

    def set_row_to_identity(self, row) -> None:
        """Zero every stored entry of ``row`` and put 1 on the diagonal."""
        self._require_mutable()
        r = as_multi_index(row)
        cols = self._rows.setdefault(r, {})
        for c in cols:
            cols[c] = 0.0
        cols[r] = 1.0

    def freeze(self) -> None:
        """Sort all entries (row-major) and switch to the immutable phase."""
        self._require_mutable()
        triples = []
        for r in sorted(self._rows):
            cols = self._rows[r]
            for c in sorted(cols):
                triples.append((r, c, cols[c]))
        self._triples = tuple(triples)

    def triples(self):
        """Sorted (row, col, value) triples; requires a frozen system."""
        if self._triples is None:
            raise NotFrozen("freeze() the system first")
        return self._triples

    def entry_count(self) -> int:
        return sum(len(cols) for cols in self._rows.values())

    def __len__(self) -> int:
        return self.entry_count()

    def items(self):
        """Yield ((row, col), value) pairs in sorted order."""
        if self._triples is not None:
            for r, c, v in self._triples:
                yield (r, c), v
            return
        for r in sorted(self._rows):
            cols = self._rows[r]
            for c in sorted(cols):
                yield (r, c), cols[c]

    def matvec(self, x: NestedVector) -> NestedVector:
        """y = A x for a frozen system; y is shaped like x.

        ``x`` must provide a scalar slot for every column key; missing
        slots raise ShapeMismatch.
        """
        triples = self.triples()
        y = x.zeros_like()
        for r, c, v in triples:
            y[r] = y[r] + v * x[c]
        return y

    def dump(self) -> str:
        """One sorted "(row) (col) value" line per entry, for debugging."""
        return "\n".join(f"{r} {c} {float(v)!r}" for (r, c), v in self.items())
