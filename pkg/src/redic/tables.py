"""Summary harnesses over the enumerators, with frozen expected values.

The expected numbers are embedded as data rather than recomputed, so any
divergence is an immediate red flag for a regression in the enumerators or
the solver.  Free-tree counts also match OEIS A000055; connected-cubic
counts match A002851.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .detection import CodeKind
from .existence import exists_red_ic
from .generators import cubic_graphs_cached, enum_trees
from .graphs import parse_graph6, write_graph6
from .solver import Budget, solve_min

# n -> (trees, with code, minimum = n-2, = n-1, = n)
TREE_REFERENCE = {
    4: (2, 1, 0, 0, 1),
    5: (3, 1, 0, 0, 1),
    6: (6, 2, 0, 0, 2),
    7: (11, 3, 0, 0, 3),
    8: (23, 6, 0, 0, 6),
    9: (47, 10, 0, 3, 7),
    10: (106, 21, 0, 4, 17),
    11: (235, 39, 0, 10, 29),
    12: (551, 82, 0, 24, 58),
    13: (1301, 167, 0, 64, 103),
    14: (3159, 360, 13, 130, 217),
    15: (7741, 766, 29, 323, 414),
    16: (19320, 1692, 96, 744, 852),
    17: (48629, 3726, 287, 1731, 1708),
}

# n -> (cubic graphs, with code, lowest minimum, highest minimum)
CUBIC_REFERENCE = {
    6: (2, 2, 6, 6),
    8: (5, 4, 6, 6),
    10: (19, 14, 6, 8),
    12: (85, 63, 8, 12),
    14: (509, 386, 8, 12),
    16: (4060, 3189, 10, 14),
    18: (41301, 33586, 11, 18),
    20: (510489, 427277, 12, 18),
}


@dataclass(frozen=True)
class TreeRow:
    n: int
    trees: int
    with_code: int
    at_n_minus_2: int
    at_n_minus_1: int
    at_n: int
    partial: bool = False

    def values(self) -> tuple[int, int, int, int, int]:
        return (self.trees, self.with_code, self.at_n_minus_2, self.at_n_minus_1, self.at_n)


@dataclass(frozen=True)
class CubicRow:
    n: int
    count: int
    with_code: int
    lowest: int | None
    highest: int | None
    partial: bool = False

    def values(self):
        return (self.count, self.with_code, self.lowest, self.highest)


def _solve_one(g6: bytes, budget_nodes: int | None) -> int | None:
    """Minimum code size of one graph, or None when infeasible or unsolved."""
    g = parse_graph6(g6)
    if exists_red_ic(g) is not None:
        return None
    budget = Budget(max_nodes=budget_nodes) if budget_nodes else None
    out = solve_min(g, CodeKind.RED_IC, budget=budget)
    return out.k if out.is_optimal else -1  # -1 marks a budget miss


def _solve_stream(graphs, threads: int, budget_nodes: int | None):
    g6s = [write_graph6(g) for g in graphs]
    if threads <= 1:
        return [_solve_one(b, budget_nodes) for b in g6s]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_solve_one, g6s, [budget_nodes] * len(g6s), chunksize=16))


def tree_row(n: int, threads: int = 1, budget_nodes: int | None = None) -> TreeRow:
    graphs = list(enum_trees(n))
    results = _solve_stream(graphs, threads, budget_nodes)
    partial = any(k == -1 for k in results)
    solved = [k for k in results if k is not None and k != -1]
    return TreeRow(
        n,
        trees=len(graphs),
        with_code=sum(1 for k in results if k is not None),
        at_n_minus_2=sum(1 for k in solved if k == n - 2),
        at_n_minus_1=sum(1 for k in solved if k == n - 1),
        at_n=sum(1 for k in solved if k == n),
        partial=partial,
    )


def cubic_row(n: int, threads: int = 1, budget_nodes: int | None = None) -> CubicRow:
    graphs = cubic_graphs_cached(n)
    results = _solve_stream(graphs, threads, budget_nodes)
    partial = any(k == -1 for k in results)
    solved = [k for k in results if k is not None and k != -1]
    return CubicRow(
        n,
        count=len(graphs),
        with_code=sum(1 for k in results if k is not None),
        lowest=min(solved) if solved else None,
        highest=max(solved) if solved else None,
        partial=partial,
    )


_TREE_COLUMNS = ("trees", "with_code", "min=n-2", "min=n-1", "min=n")
_CUBIC_COLUMNS = ("cubic", "with_code", "lowest", "highest")


def diff_row(row: TreeRow | CubicRow) -> list[tuple[str, int, int | None, bool]]:
    """(column, expected, got, ok) against the reference; empty if n is
    beyond the embedded range."""
    if isinstance(row, TreeRow):
        ref = TREE_REFERENCE.get(row.n)
        cols = _TREE_COLUMNS
    else:
        ref = CUBIC_REFERENCE.get(row.n)
        cols = _CUBIC_COLUMNS
    if ref is None:
        return []
    out = []
    for name, expected, got in zip(cols, ref, row.values()):
        out.append((name, expected, got, expected == got and not row.partial))
    return out
