"""Isomorphism-free enumeration: free trees, connected cubic graphs, corpora.

Trees come from networkx's level-sequence generator (one representative per
isomorphism class, constant amortized time).  Cubic graphs are generated
natively by an orderly algorithm: graphs are grown one vertex at a time and
a partial graph survives only if its column-major upper-triangle encoding
is the lexicographic maximum over all relabelings.  Restricting each new
vertex to attach to at least one earlier vertex is sound because the
maximal encoding of a connected graph never contains an empty column, and
prefixes of maximal encodings are maximal for the induced subgraph -- so
every isomorphism class is emitted exactly once, with no explicit
duplicate store.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import IO, Iterable, Iterator

import networkx as nx

from .graphs import Graph, Graph6Error, bits, build_graph, parse_graph6

log = logging.getLogger(__name__)


# -- free trees ----------------------------------------------------------


def enum_trees(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of free trees on n vertices."""
    if n < 1:
        raise ValueError("trees need n >= 1")
    if n == 1:
        yield build_graph(1, [])
        return
    if n == 2:
        yield build_graph(2, [(0, 1)])
        return
    for t in nx.nonisomorphic_trees(n):
        yield build_graph(n, list(t.edges()))


# -- connected cubic graphs ------------------------------------------------


def _column_value(nbr_mask: int, order: list[int]) -> int:
    """Column bits of a candidate vertex against already-placed vertices.

    Earlier placed vertices occupy more significant bits, so columns of the
    same length compare as plain integers.
    """
    c = 0
    for p in order:
        c = c << 1 | (nbr_mask >> p & 1)
    return c


def _is_canonical(adj: list[int], cols: list[int]) -> bool:
    """Is the current labeling's encoding the lexicographic maximum?

    Searches for a relabeling that produces a strictly larger column
    sequence, pruning branches as soon as they fall below the current one.
    Column values are maintained incrementally: placing vertex p shifts
    every candidate's running column left and appends its adjacency bit
    with p.
    """
    k = len(adj)
    if k <= 2:
        return True
    target = cols  # cols[j-1] is the column of the vertex at position j
    used = [False] * k
    vrange = range(k)

    def extend(depth: int, run: list[int]) -> bool:
        # True = some relabeling beats the current encoding
        if depth == k:
            return False
        col_target = target[depth - 1]
        ties = []
        for v in vrange:
            if used[v]:
                continue
            c = run[v]
            if c > col_target:
                return True
            if c == col_target:
                ties.append(v)
        for v in ties:
            used[v] = True
            av = adj[v]
            if extend(depth + 1, [run[u] << 1 | (av >> u & 1) for u in vrange]):
                used[v] = False
                return True
            used[v] = False
        return False

    for start in range(k):
        used[start] = True
        a = adj[start]
        if extend(1, [a >> u & 1 for u in vrange]):
            used[start] = False
            return False
        used[start] = False
    return True


def enum_cubic(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of connected 3-regular graphs.

    Odd n yields nothing (the degree sum would be odd); a note is logged.
    """
    if n < 4:
        return
    if n % 2:
        log.info("no cubic graph exists on %d vertices (odd order)", n)
        return
    yield from _grow_cubic([0], [], n)


@lru_cache(maxsize=4)
def cubic_graphs_cached(n: int) -> tuple[Graph, ...]:
    """Materialized ``enum_cubic`` stream; graphs are immutable, reuse is safe."""
    return tuple(enum_cubic(n))


def _grow_cubic(adj: list[int], cols: list[int], n: int) -> Iterator[Graph]:
    k = len(adj)
    if k == n:
        yield build_graph(n, _adj_edges(adj))
        return
    rem = n - k  # vertices still to be placed, including the new one
    deficits = [3 - a.bit_count() for a in adj]
    # candidates for the new vertex's backward neighbors
    open_verts = [v for v in range(k) if deficits[v] > 0]
    for size in (3, 2, 1):
        if size > len(open_verts):
            continue
        for subset in combinations(open_verts, size):
            mask = 0
            for v in subset:
                mask |= 1 << v
            if not _extension_feasible(adj, deficits, mask, size, k, rem):
                continue
            new_col = _column_value(mask, list(range(k)))
            # swapping the last two vertices must not increase the encoding
            if k >= 2 and new_col >> 1 > cols[-1]:
                continue
            new_adj = [a | ((mask >> v & 1) << k) for v, a in enumerate(adj)]
            new_adj.append(mask)
            new_cols = cols + [new_col]
            if _is_canonical(new_adj, new_cols):
                yield from _grow_cubic(new_adj, new_cols, n)


def _extension_feasible(adj, deficits, mask, size, k, rem) -> bool:
    """Degree arithmetic: can this partial graph still close to 3-regular?

    After placing the new vertex, rem-1 vertices remain; the total deficit
    must be coverable by their 3-slot budget, no single deficit may exceed
    the number of future vertices (simple graph), and the parity of the
    deficit must match (each internal future edge consumes two slots).
    """
    future = rem - 1
    total = 3 - size  # the new vertex's own deficit
    for v, d in enumerate(deficits):
        d -= mask >> v & 1
        if d > future:
            return False
        total += d
    if total > 3 * future:
        return False
    if (total - future) % 2:
        return False
    if future == 0:
        return total == 0
    # min edges needed from future-internal pairs
    if 3 * future - total > future * (future - 1):
        return False
    return True


def _adj_edges(adj: list[int]) -> list[tuple[int, int]]:
    out = []
    for u, m in enumerate(adj):
        for v in bits(m >> (u + 1)):
            out.append((u, u + 1 + v))
    return out


# -- canonical certificates (for tests and de-duplication) -----------------


def canonical_key(g: Graph) -> tuple[int, ...]:
    """Canonical form usable as an isomorphism-class key (small graphs).

    Maximizes the column-major encoding by branch and bound; intended for
    the sizes the enumerators are verified at, not for large graphs.
    """
    n = g.n
    if n == 0:
        return (0,)
    best: list[int] | None = None
    order: list[int] = []
    used = [False] * n

    def extend(depth: int, cols: list[int]):
        nonlocal best
        if depth == n:
            if best is None or cols > best:
                best = list(cols)
            return
        ranked = sorted(
            ((_column_value(g.adj[v], order), v) for v in range(n) if not used[v]),
            reverse=True,
        )
        for c, v in ranked:
            cols.append(c)
            # ranked is descending, so once below the incumbent prefix all
            # remaining choices are too
            if best is not None and cols < best[:depth]:
                cols.pop()
                break
            used[v] = True
            order.append(v)
            extend(depth + 1, cols)
            order.pop()
            used[v] = False
            cols.pop()

    for start in range(n):
        used[start] = True
        order.append(start)
        extend(1, [])
        order.pop()
        used[start] = False
    return (n, *best) if best is not None else (n,)


def are_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and canonical_key(a) == canonical_key(b)


# -- graph6 streams ---------------------------------------------------------


def read_graph6_stream(
    source: str | Path | IO | Iterable[str | bytes],
    strict: bool = True,
) -> Iterator[Graph]:
    """Parse newline-delimited graph6, in order.

    With ``strict`` a malformed line raises :class:`Graph6Error` tagged with
    its line number; otherwise the line is logged and skipped.
    """
    if isinstance(source, (str, Path)):
        with open(source, "rb") as fh:
            yield from read_graph6_stream(fh, strict=strict)
        return
    for lineno, line in enumerate(source, start=1):
        if isinstance(line, str):
            line = line.encode("ascii")
        line = line.strip()
        if not line:
            continue
        try:
            yield parse_graph6(line)
        except Graph6Error as exc:
            if strict:
                raise Graph6Error(f"line {lineno}: {exc}") from exc
            log.warning("skipping malformed graph6 at line %d: %s", lineno, exc)
