"""Extremal families, each packaged with a witness code and a certificate.

Optimality is certified "bound meets construction" where a structural lower
bound equals the witness size; otherwise the instance is tagged as needing
the solver.  Every instance re-verifies its own witness at construction
time -- a failure here is a construction bug, not a soft error.

The large-n families are subset-code graphs: fix k detectors, give every
vertex a distinct "code" (the detectors of its closed neighborhood), and
realize each admissible subset as the code of one vertex.  Codes of equal
parity automatically differ in at least two positions, which is exactly the
fault-tolerant distinguishing requirement.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .detection import CodeKind, verify
from .graphs import Graph, build_graph, hypercube
from .solver import Budget, feasible_at, lower_bound
from . import generators

__all__ = [
    "ConstructedInstance",
    "star_extremal_even",
    "star_extremal_odd",
    "cycle_extremal_odd",
    "multipartite_exact",
    "extremal_tree",
    "g6_gadget",
    "g6_ring",
    "G14Gadget",
    "g14_gadget_search",
    "g14_ring",
    "q5_code_search",
    "double_hypercube_code",
]


@dataclass(frozen=True)
class ConstructedInstance:
    graph: Graph
    witness: tuple[int, ...]
    claimed_k: int
    certificate: str  # "bound:<which>" or "solver"

    @property
    def density(self):
        from fractions import Fraction

        return Fraction(self.claimed_k, self.graph.n)


def _certified(graph: Graph, witness, claimed_k: int, certificate: str) -> ConstructedInstance:
    witness = tuple(sorted(witness))
    if len(witness) != claimed_k:
        raise AssertionError(f"witness size {len(witness)} != claimed {claimed_k}")
    bad = verify(graph, witness, CodeKind.RED_IC)
    if bad is not None:
        raise AssertionError(f"constructed witness fails verification: {bad}")
    if certificate.startswith("bound:") and lower_bound(graph, CodeKind.RED_IC).value != claimed_k:
        raise AssertionError("bound certificate does not meet the construction")
    return ConstructedInstance(graph, witness, claimed_k, certificate)


# -- subset-code families ---------------------------------------------------


def _subset_code_graph(k: int, detector_codes: list[frozenset[int]],
                       extra_codes: list[frozenset[int]]) -> tuple[Graph, tuple[int, ...]]:
    """Realize codes over detectors 0..k-1.

    detector_codes[i] is the required closed-neighborhood code of detector
    i and must contain i; consistency (j in code(i) iff i in code(j)) is
    asserted since detector adjacency is symmetric.  Each extra code
    becomes one non-detector adjacent to exactly that detector set.
    """
    for i, code in enumerate(detector_codes):
        if i not in code:
            raise AssertionError("detector code must contain the detector itself")
        for j in code:
            if j != i and i not in detector_codes[j]:
                raise AssertionError("detector codes are not symmetric")
    n = k + len(extra_codes)
    edges = []
    for i in range(k):
        for j in detector_codes[i]:
            if j > i:
                edges.append((i, j))
    for off, code in enumerate(extra_codes):
        v = k + off
        for j in code:
            edges.append((v, j))
    return build_graph(n, edges), tuple(range(k))


def _even_subsets(k: int, lo: int, hi: int) -> list[frozenset[int]]:
    out = []
    for size in range(lo, hi + 1, 2):
        out.extend(frozenset(c) for c in combinations(range(k), size))
    return out


def star_extremal_even(k: int) -> ConstructedInstance:
    """Largest graph with fault-tolerant code size k, for even k >= 4.

    Detectors induce a star: hub 0 adjacent to detectors 1..k-1, so the hub's
    code is the full detector set (even) and each leaf detector's code is the
    pair {0, i}.  Non-detectors realize every remaining even-size code of
    size 2..k-2.  All codes are distinct even-size subsets, hence pairwise at
    symmetric difference >= 2, and n = 2^(k-1) - 1 meets the counting bound.
    """
    if k < 4 or k % 2:
        raise ValueError("even star family needs even k >= 4")
    hub_code = frozenset(range(k))
    det_codes = [hub_code] + [frozenset({0, i}) for i in range(1, k)]
    taken = set(det_codes)
    extras = [c for c in _even_subsets(k, 2, k - 2) if c not in taken]
    g, witness = _subset_code_graph(k, det_codes, extras)
    expect_n = 2 ** (k - 1) - 1
    assert sum(comb(k, i) for i in range(2, k + 1, 2)) == expect_n
    assert g.n == expect_n, (g.n, expect_n)
    return _certified(g, witness, k, "bound:counting")


def star_extremal_odd(k: int) -> ConstructedInstance:
    """Star-based family for odd k >= 5, n = 2^(k-1) - k.

    The hub keeps the full (odd-size) detector set as its code; even codes
    stop at size k-3 because a (k-1)-size code would differ from the full
    set in a single position.
    """
    if k < 5 or k % 2 == 0:
        raise ValueError("odd star family needs odd k >= 5")
    hub_code = frozenset(range(k))
    det_codes = [hub_code] + [frozenset({0, i}) for i in range(1, k)]
    taken = set(det_codes)
    extras = [c for c in _even_subsets(k, 2, k - 3) if c not in taken]
    g, witness = _subset_code_graph(k, det_codes, extras)
    expect_n = 2 ** (k - 1) - k
    assert sum(comb(k, i) for i in range(2, k - 2, 2)) + 1 == expect_n
    assert g.n == expect_n, (g.n, expect_n)
    cert = "bound:counting" if lower_bound(g, CodeKind.RED_IC).value == k else "solver"
    return _certified(g, witness, k, cert)


def cycle_extremal_odd(k: int) -> ConstructedInstance:
    """Cycle-based family for odd k >= 5, n = 2^(k-1) - k.

    Detectors form a k-cycle whose closed neighborhoods are the k cyclic
    triples; non-detectors realize every other odd-size code of size >= 3.
    Distinct odd-size sets always differ in at least two positions.
    """
    if k < 5 or k % 2 == 0:
        raise ValueError("odd cycle family needs odd k >= 5")
    det_codes = [frozenset({(i - 1) % k, i, (i + 1) % k}) for i in range(k)]
    taken = set(det_codes)
    extras = []
    for size in range(3, k + 1, 2):
        extras.extend(frozenset(c) for c in combinations(range(k), size) if frozenset(c) not in taken)
    g, witness = _subset_code_graph(k, det_codes, extras)
    expect_n = 2 ** (k - 1) - k
    assert sum(comb(k, i) for i in range(3, k + 1, 2)) == expect_n
    assert g.n == expect_n, (g.n, expect_n)
    cert = "bound:counting" if lower_bound(g, CodeKind.RED_IC).value == k else "solver"
    return _certified(g, witness, k, cert)


def multipartite_exact(n: int) -> ConstructedInstance:
    """Complete multipartite K_{2,...,2}: every vertex an open twin, code = V."""
    if n < 4 or n % 2:
        raise ValueError("needs even n >= 4")
    from .graphs import complete_multipartite

    g = complete_multipartite([2] * (n // 2))
    return _certified(g, range(n), n, "solver")


# -- extremal trees ---------------------------------------------------------


def extremal_tree(n: int) -> ConstructedInstance:
    """Tree on n vertices whose minimum code size is ceil(4(n+1)/5).

    Chains of 4-vertex claws separated by non-detector connectors, with the
    (n+1) mod 5 leftover attached as extra detector leaves on the first hub
    (supports keep degree >= 3, so feasibility is preserved).  Detectors are
    everything except the connectors, and the acyclic lower bound meets the
    witness size exactly.
    """
    if n < 4:
        raise ValueError("needs n >= 4")
    j = (n - 4) // 5
    excess = (n - 4) % 5
    edges = []
    for i in range(j + 1):
        hub = 4 * i
        edges += [(hub, hub + 1), (hub, hub + 2), (hub, hub + 3)]
    connectors = []
    for i in range(1, j + 1):
        x = 4 * (j + 1) + (i - 1)
        connectors.append(x)
        edges += [(4 * (i - 1) + 3, x), (x, 4 * i + 1)]
    base = 4 * (j + 1) + j
    for t in range(excess):
        edges.append((0, base + t))
    g = build_graph(n, edges)
    witness = sorted(set(range(n)) - set(connectors))
    return _certified(g, witness, n - j, "bound:tree")


# -- cubic family with maximum code (all of V) ------------------------------


_G6_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 5), (2, 4)]
_G6_PORTS = (0, 3)  # the two degree-2 vertices


def g6_gadget() -> Graph:
    """Six-vertex block of the all-detectors cubic family.

    A 6-cycle a,b,c,d,e,f with chords b-f and c-e; a and d are the degree-2
    ports.  Adjacent chord pairs are each other's only distinguishers: the
    closed neighborhoods of b and f differ exactly in {c, e} and those of c
    and e exactly in {b, f}, which is what forces every vertex into any
    valid code once the ports are wired to more blocks.
    """
    return build_graph(6, _G6_EDGES, labels=list("abcdef"))


def g6_ring(t: int) -> ConstructedInstance:
    """Ring of t >= 2 six-vertex blocks, port d of block i to port a of i+1.

    Cubic on 6t vertices; the only code is all of V, which the solver
    certifies at small t.
    """
    if t < 2:
        raise ValueError("ring needs t >= 2")
    edges = []
    labels = []
    for i in range(t):
        base = 6 * i
        edges += [(base + u, base + v) for u, v in _G6_EDGES]
        labels += [f"{ch}{i}" for ch in "abcdef"]
    for i in range(t):
        edges.append((6 * i + _G6_PORTS[1], 6 * ((i + 1) % t) + _G6_PORTS[0]))
    g = build_graph(6 * t, edges, labels=labels)
    assert g.is_cubic()
    return _certified(g, range(6 * t), 6 * t, "solver")


# -- cubic family with minimum density 4/7 ----------------------------------


@dataclass(frozen=True)
class G14Gadget:
    """14-vertex fragment with four degree-2 ports and an internal 8-code.

    The witness 2-dominates all 14 vertices and 2-distinguishes every
    internal pair using internal detectors only, so it survives any wiring
    of the ports to the outside.
    """

    graph: Graph
    ports: tuple[int, int, int, int]  # (p1, p2) from one cut edge, (p3, p4) from the other
    witness: tuple[int, ...]


def g14_gadget_search(budget_seconds: float = 120.0) -> G14Gadget | None:
    """Search for a gadget among cubic graphs on 14 vertices minus two
    disjoint edges.

    Candidate parents are scanned in enumeration order, lowest known
    minimum first; for each, every unordered pair of vertex-disjoint edges
    is cut and the remaining fragment is asked for a code of size 8 whose
    validity does not depend on the ports' missing edges.  Returns None if
    the budget expires first (reported, not fatal).
    """
    from .detection import CodeKind
    from .solver import solve_min

    deadline = time.perf_counter() + budget_seconds
    parents = []
    for idx, g in enumerate(generators.cubic_graphs_cached(14)):
        out = solve_min(g, CodeKind.RED_IC) if _feasible(g) else None
        if out is not None and out.is_optimal:
            parents.append((out.k, idx, g))
        if time.perf_counter() > deadline:
            return None
    parents.sort(key=lambda t: (t[0], t[1]))
    for _, _, g in parents:
        edges = g.edges()
        for i in range(len(edges)):
            u1, v1 = edges[i]
            for jdx in range(i + 1, len(edges)):
                u2, v2 = edges[jdx]
                if len({u1, v1, u2, v2}) != 4:
                    continue
                if time.perf_counter() > deadline:
                    return None
                cut = [e for kk, e in enumerate(edges) if kk not in (i, jdx)]
                frag = build_graph(14, cut)
                if not frag.is_connected():
                    continue
                res = feasible_at(frag, CodeKind.RED_IC, 8)
                if res.witness is not None:
                    return G14Gadget(frag, (u1, v1, u2, v2), res.witness)
    return None


def _feasible(g: Graph) -> bool:
    from .existence import exists_red_ic

    return exists_red_ic(g) is None


def g14_ring(gadget: G14Gadget, t: int) -> ConstructedInstance:
    """Ring of t >= 2 fourteen-vertex gadgets; density exactly 4/7.

    Ports of one cut edge wire forward to the other cut edge's ports of the
    next copy, restoring 3-regularity.  The 8t-detector witness meets the
    cubic lower bound ceil(4 * 14t / 7) = 8t, so optimality needs no search.
    """
    if t < 2:
        raise ValueError("ring needs t >= 2")
    n1 = gadget.graph.n
    p1, p2, p3, p4 = gadget.ports
    edges = []
    for i in range(t):
        base = n1 * i
        edges += [(base + u, base + v) for u, v in gadget.graph.edges()]
    for i in range(t):
        nxt = n1 * ((i + 1) % t)
        edges += [(n1 * i + p1, nxt + p3), (n1 * i + p2, nxt + p4)]
    g = build_graph(n1 * t, edges)
    assert g.is_cubic()
    witness = [n1 * i + w for i in range(t) for w in gadget.witness]
    return _certified(g, witness, 8 * t, "bound:cubic")


# -- hypercubes --------------------------------------------------------------


def q5_code_search(budget: Budget | None = None) -> ConstructedInstance:
    """Witness of size 12 on the 5-dimensional hypercube (density 3/8)."""
    q5 = hypercube(5)
    res = feasible_at(q5, CodeKind.RED_IC, 12, budget=budget)
    if res.witness is None:
        raise RuntimeError("no 12-vertex code found on the 5-cube within budget")
    return _certified(q5, res.witness, 12, "solver")


def double_hypercube_code(d: int, witness) -> tuple[Graph, tuple[int, ...]]:
    """Duplicate a code across both layers of the next-dimension hypercube.

    Each detector v of Q_d becomes detectors v and v + 2^d of Q_{d+1}; the
    doubled set verifies there, which is why optimal densities cannot
    increase with the dimension.
    """
    big = hypercube(d + 1)
    doubled = sorted(set(witness) | {v | 1 << d for v in witness})
    bad = verify(big, doubled, CodeKind.RED_IC)
    if bad is not None:
        raise AssertionError(f"doubled code fails verification: {bad}")
    return big, tuple(doubled)
