"""Shared test utilities: random basis trees and brute-force oracles."""

from __future__ import annotations

import numpy as np

from fembasis import Composite, Leaf, Power, Strategy

ALL_STRATEGIES = (
    Strategy.BLOCKED_LEXICOGRAPHIC,
    Strategy.BLOCKED_INTERLEAVED,
    Strategy.FLAT_LEXICOGRAPHIC,
    Strategy.FLAT_INTERLEAVED,
)
COMPOSITE_STRATEGIES = (
    Strategy.BLOCKED_LEXICOGRAPHIC,
    Strategy.FLAT_LEXICOGRAPHIC,
)


def random_tree(rng, max_depth=3, max_children=4):
    """Random valid basis tree: depth <= max_depth, small arities."""

    def gen(depth):
        if depth >= max_depth or rng.random() < 0.35:
            return Leaf(int(rng.integers(1, 3)))
        if rng.random() < 0.5:
            strategy = ALL_STRATEGIES[rng.integers(len(ALL_STRATEGIES))]
            return Power(gen(depth + 1), int(rng.integers(1, max_children + 1)), strategy)
        strategy = COMPOSITE_STRATEGIES[rng.integers(len(COMPOSITE_STRATEGIES))]
        arity = int(rng.integers(1, max_children + 1))
        return Composite(tuple(gen(depth + 1) for _ in range(arity)), strategy)

    return gen(1)


def enumerate_multi_indices(basis):
    """Every global multi-index realized by any element, as a set."""
    seen = set()
    view = basis.local_view()
    for e in range(basis.grid.num_elements):
        view.bind(e)
        for i in range(view.size):
            seen.add(view.index(i))
    return seen


def prefix_degree_table(entries):
    """Expected size() of every realized prefix, from the enumerated set.

    Computes max-next-digit + 1 per strict prefix in one pass and maps each
    full entry to 0, mirroring the definition of the per-prefix degree.
    """
    table = {}
    for e in entries:
        e = tuple(e)
        for t in range(len(e)):
            p = e[:t]
            d = e[t] + 1
            if table.get(p, 0) < d:
                table[p] = d
    for e in entries:
        table[tuple(e)] = 0
    return table


def gauss_solve(a, b):
    """Dense Gaussian elimination with partial pivoting, no library solver."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    n = len(b)
    for col in range(n):
        pivot = col + int(np.argmax(np.abs(a[col:, col])))
        if abs(a[pivot, col]) < 1e-14:
            raise ZeroDivisionError("singular test matrix")
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            b[[col, pivot]] = b[[pivot, col]]
        for row in range(col + 1, n):
            factor = a[row, col] / a[col, col]
            a[row, col:] -= factor * a[col, col:]
            b[row] -= factor * b[col]
    x = np.zeros(n)
    for row in range(n - 1, -1, -1):
        x[row] = (b[row] - a[row, row + 1 :] @ x[row + 1 :]) / a[row, row]
    return x


def trie_is_index_tree(entries):
    """Independent index-tree check: rebuild the ordered tree from paths.

    Inserts every entry into a dict trie, then requires (a) no entry marks
    an inner node, (b) every inner node's digit set is 0..max with no gaps.
    """
    TERMINAL = "terminal"
    trie: dict = {}
    for e in entries:
        node = trie
        for d in tuple(e):
            node = node.setdefault(d, {})
        node[TERMINAL] = True

    def check(node):
        digits = [k for k in node if k != TERMINAL]
        if TERMINAL in node and digits:
            return False
        if digits and sorted(digits) != list(range(max(digits) + 1)):
            return False
        return all(check(node[d]) for d in digits)

    return check(trie) if trie else True
