"""Exact minimum IC / RED:IC computation by branch and bound.

Every code condition is a covering constraint ``|mask & S| >= t``:
domination of v uses mask N[v], and distinguishing u, v uses mask
N[u] symdiff N[v] (intersecting with S distributes over the symmetric
difference).  Pairs at distance >= 3 are implied by the domination
constraints and are not tracked.

The search branches on a vertex drawn from the most-constrained unresolved
constraint, include branch first, with ties broken toward the lowest vertex
index; unit propagation forces constraints whose remaining candidates are
all required.  Nothing is randomized, so runs are reproducible node for
node.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import existence
from .detection import CodeKind, verify
from .graphs import Graph, bits

__all__ = [
    "Budget",
    "BoundReport",
    "SolveOutcome",
    "FeasibilityResult",
    "forced_detectors",
    "lower_bound",
    "solve_min",
    "feasible_at",
]


@dataclass(frozen=True)
class Budget:
    """Caps for the search; None means unlimited.

    Wall-clock caps are honored only when ``deterministic=False`` is passed
    to the solver: respecting them in deterministic mode would make the
    outcome depend on machine speed.
    """

    max_nodes: int | None = None
    max_seconds: float | None = None


@dataclass
class SolverStats:
    nodes: int = 0
    elapsed: float = 0.0


@dataclass(frozen=True)
class SolveOutcome:
    """Result of a minimization run.

    status is "optimal" (k and witness set), "bounded" (search stopped on
    budget; lower <= optimum <= upper, witness realizes upper when present)
    or "infeasible" (reason explains why no code exists).
    """

    status: str
    n: int
    k: int | None = None
    witness: tuple[int, ...] | None = None
    lower: int | None = None
    upper: int | None = None
    reason: existence.NoCode | None = None
    stats: SolverStats = field(default_factory=SolverStats)

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"

    @property
    def density(self):
        from fractions import Fraction

        if self.k is None or self.n == 0:
            return None
        return Fraction(self.k, self.n)


@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of the size-K decision problem.

    witness is a verified code of size <= K when one exists.  When witness
    is None, ``exhaustive`` distinguishes a proof of impossibility from a
    budget-limited unknown.
    """

    witness: tuple[int, ...] | None
    exhaustive: bool
    stats: SolverStats = field(default_factory=SolverStats)


def forced_detectors(g: Graph, kind: CodeKind = CodeKind.RED_IC) -> frozenset[int]:
    """Vertices provably contained in every RED:IC of g.

    Union of: all leaves and all support vertices; all neighbors of a
    degree-3 support vertex; every v beginning a path v-w-u whose interior
    w and endpoint u both have degree 2.  Raises on infeasible input, and
    returns the empty set for plain ICs (these rules need the doubled
    thresholds).
    """
    if kind is not CodeKind.RED_IC:
        return frozenset()
    if existence.exists_red_ic(g) is not None:
        raise ValueError("no RED:IC exists for this graph")
    forced = 0
    deg = g.degrees()
    for v in range(g.n):
        if deg[v] == 1:
            forced |= g.closed_nbhd(v)  # leaf and its support
            s = next(bits(g.adj[v]))
            if deg[s] == 3:
                forced |= g.closed_nbhd(s)  # neighbors of a degree-3 support
        elif deg[v] == 2:
            a, b = bits(g.adj[v])
            if deg[a] == 2:
                forced |= 1 << b
            if deg[b] == 2:
                forced |= 1 << a
    return frozenset(bits(forced))


@dataclass(frozen=True)
class BoundReport:
    """Lower bounds applicable to a graph, with the structural reasons."""

    log_bound: int
    tree_bound: int | None = None
    cubic_bound: int | None = None
    torus_bound: int | None = None
    notes: tuple[str, ...] = ()

    @property
    def value(self) -> int:
        vals = [self.log_bound, self.tree_bound, self.cubic_bound, self.torus_bound]
        return max(v for v in vals if v is not None)


def lower_bound(g: Graph, kind: CodeKind) -> BoundReport:
    """Structural lower bounds on the minimum code size.

    Always includes the counting bound ceil(log2(n+1)) (+1 for RED:IC,
    since dropping any one detector must leave an IC).  For RED:IC adds:
    ceil(4(n+1)/5) on trees, ceil(4n/7) on cubic graphs, and ceil(2n/5) on
    torus products C_i box C_j built by the named builder with i, j >= 5
    and at least one even -- the torus bound depends on the product
    structure, so it keys on builder provenance, never on shape inference.
    """
    n = g.n
    log_b = n.bit_length()  # = ceil(log2(n+1))
    notes = []
    if kind is CodeKind.IC:
        return BoundReport(log_bound=log_b, notes=("counting bound",))
    log_b += 1
    notes.append("counting bound plus one for fault tolerance")
    tree_b = cubic_b = torus_b = None
    if n >= 4 and g.is_tree():
        tree_b = -(-4 * (n + 1) // 5)
        notes.append("acyclic: detector components argument")
    if g.is_cubic():
        cubic_b = -(-4 * n // 7)
        notes.append("cubic: share of a detector is at most 7/4")
    if g.meta and g.meta.get("family") == "torus":
        i, j = g.meta["params"]
        if i >= 5 and j >= 5 and (i % 2 == 0 or j % 2 == 0):
            torus_b = -(-2 * n // 5)
            notes.append("torus product built with tileable dimensions")
    return BoundReport(log_b, tree_b, cubic_b, torus_b, tuple(notes))


class _BudgetExhausted(Exception):
    pass


class _Search:
    """Shared branch-and-bound core for minimization and K-feasibility."""

    def __init__(self, g: Graph, kind: CodeKind, budget: Budget | None, deterministic: bool):
        self.g = g
        self.full = g.full_mask()
        self.kind = kind
        self.budget = budget or Budget()
        self.deterministic = deterministic
        self.nodes = 0
        self.t0 = time.perf_counter()
        self.best: int | None = None  # incumbent mask
        self.cap = g.n + 1  # solutions must have size < cap
        self.stop_at_first = False
        self.done = False

        closed = g._closed
        masks = list(closed)  # domination constraints, one per vertex
        thr = [kind.dom_req] * g.n
        dist_req = kind.dist_req
        pair_masks = set()
        for u in range(g.n):
            reach = closed[u]
            for w in bits(g.adj[u]):
                reach |= g.adj[w]
            for v in bits(reach & ~((1 << (u + 1)) - 1)):
                pair_masks.add(closed[u] ^ closed[v])
        for d in sorted(pair_masks):
            masks.append(d)
            thr.append(dist_req)
        self.masks = masks
        self.thr = thr
        self.n_dom = g.n
        self.max_cover = max((c.bit_count() for c in closed), default=1)

    # -- budget ----------------------------------------------------------

    def _tick(self):
        self.nodes += 1
        b = self.budget
        if b.max_nodes is not None and self.nodes > b.max_nodes:
            raise _BudgetExhausted
        if (
            not self.deterministic
            and b.max_seconds is not None
            and self.nodes % 256 == 0
            and time.perf_counter() - self.t0 > b.max_seconds
        ):
            raise _BudgetExhausted

    # -- constraint propagation -------------------------------------------

    def _propagate(self, in_mask: int, out_mask: int):
        """Force all unit constraints; return (in_mask, unresolved) or None.

        unresolved entries are (candidates, residual, constraint index).
        """
        masks, thr = self.masks, self.thr
        while True:
            avail = self.full & ~in_mask & ~out_mask
            unresolved = []
            forced = 0
            for i in range(len(masks)):
                m = masks[i]
                r = thr[i] - (m & in_mask).bit_count()
                if r <= 0:
                    continue
                cand = m & avail
                c = cand.bit_count()
                if c < r:
                    return None
                if c == r:
                    forced |= cand
                else:
                    unresolved.append((cand, r, i))
            if forced:
                in_mask |= forced
                continue
            return in_mask, unresolved

    # -- bounding ----------------------------------------------------------

    def _need(self, unresolved, in_mask: int) -> int:
        # disjoint packing: constraints with pairwise disjoint candidate sets
        # each require their own detectors
        entries = sorted(unresolved, key=lambda e: (e[0].bit_count(), e[2]))
        used = 0
        packed = 0
        dom_deficit = 0
        for cand, r, i in entries:
            if i < self.n_dom:
                dom_deficit += r
            if cand & used == 0:
                packed += r
                used |= cand
        ratio = -(-dom_deficit // self.max_cover)
        return packed if packed >= ratio else ratio

    # -- branching -----------------------------------------------------------

    def _branch_vertex(self, unresolved) -> int:
        best = min(unresolved, key=lambda e: (e[0].bit_count() - e[1], e[0].bit_count(), e[2]))
        cand = best[0]
        best_x = -1
        best_score = -1
        for x in bits(cand):
            score = 0
            for c2, _, _ in unresolved:
                if c2 >> x & 1:
                    score += 1
            if score > best_score:
                best_score = score
                best_x = x
        return best_x

    # -- search ------------------------------------------------------------

    def _dfs(self, in_mask: int, out_mask: int):
        self._tick()
        prop = self._propagate(in_mask, out_mask)
        if prop is None:
            return
        in_mask, unresolved = prop
        size = in_mask.bit_count()
        if not unresolved:
            if size < self.cap:
                self.best = in_mask
                self.cap = size
                if self.stop_at_first:
                    self.done = True
            return
        if size + self._need(unresolved, in_mask) >= self.cap:
            return
        x = self._branch_vertex(unresolved)
        bit = 1 << x
        self._dfs(in_mask | bit, out_mask)
        if self.done:
            return
        self._dfs(in_mask, out_mask | bit)

    def root_lower(self) -> int:
        prop = self._propagate(0, 0)
        if prop is None:
            return self.g.n + 1  # contradictory constraints: nothing feasible
        in_mask, unresolved = prop
        return in_mask.bit_count() + (self._need(unresolved, in_mask) if unresolved else 0)

    def greedy(self, seed_mask: int = 0) -> int | None:
        """Deterministic greedy cover used as the initial incumbent."""
        in_mask = seed_mask
        while True:
            prop = self._propagate(in_mask, 0)
            if prop is None:
                return None
            in_mask, unresolved = prop
            if not unresolved:
                return in_mask
            scores: dict[int, int] = {}
            for cand, r, _ in unresolved:
                for x in bits(cand):
                    scores[x] = scores.get(x, 0) + r
            best_x = max(scores, key=lambda x: (scores[x], -x))
            in_mask |= 1 << best_x

    def run(self, seed_mask: int, cap: int, stop_at_first: bool) -> bool:
        """Explore from the seed; returns False when the budget ran out."""
        self.cap = cap
        self.stop_at_first = stop_at_first
        try:
            self._dfs(seed_mask, 0)
            return True
        except _BudgetExhausted:
            return False


def _existence_failure(g: Graph, kind: CodeKind) -> existence.NoCode | None:
    if kind is CodeKind.RED_IC:
        return existence.exists_red_ic(g)
    return existence.exists_ic(g)


def _witness_tuple(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def solve_min(
    g: Graph,
    kind: CodeKind = CodeKind.RED_IC,
    budget: Budget | None = None,
    deterministic: bool = True,
) -> SolveOutcome:
    """Minimum code size with witness, or bounds when the budget runs out.

    The incumbent starts from a deterministic greedy completion of the
    forced detectors (V(G) itself is feasible once existence holds), so a
    budget-limited run still reports a valid upper bound and witness.
    """
    t0 = time.perf_counter()
    reason = _existence_failure(g, kind)
    if reason is not None:
        return SolveOutcome("infeasible", g.n, reason=reason,
                            stats=SolverStats(0, time.perf_counter() - t0))
    if g.n == 0:
        return SolveOutcome("optimal", 0, k=0, witness=(), lower=0, upper=0,
                            stats=SolverStats(0, time.perf_counter() - t0))
    search = _Search(g, kind, budget, deterministic)
    seed = 0
    for v in forced_detectors(g, kind):
        seed |= 1 << v
    incumbent = search.greedy(seed)
    assert incumbent is not None, "existence passed but no code found greedily"
    root_lb = max(lower_bound(g, kind).value, search.root_lower())
    completed = search.run(seed, cap=incumbent.bit_count(), stop_at_first=False)
    best = search.best if search.best is not None else incumbent
    k = best.bit_count()
    stats = SolverStats(search.nodes, time.perf_counter() - t0)
    bad = verify(g, best, kind)
    if bad is not None:
        raise RuntimeError(f"solver produced an invalid witness: {bad}")
    if completed:
        return SolveOutcome("optimal", g.n, k=k, witness=_witness_tuple(best),
                            lower=k, upper=k, stats=stats)
    return SolveOutcome("bounded", g.n, k=k, witness=_witness_tuple(best),
                        lower=min(root_lb, k), upper=k, stats=stats)


def feasible_at(
    g: Graph,
    kind: CodeKind,
    k: int,
    budget: Budget | None = None,
    deterministic: bool = True,
) -> FeasibilityResult:
    """Decide whether a code of size <= k exists; returns a verified witness.

    Without a budget the answer is exhaustive: witness=None means no such
    code exists.  With a budget, witness=None and exhaustive=False means
    the search was cut short.
    """
    t0 = time.perf_counter()
    reason = _existence_failure(g, kind)
    if reason is not None:
        return FeasibilityResult(None, True, SolverStats(0, time.perf_counter() - t0))
    if k < 0:
        return FeasibilityResult(None, True, SolverStats(0, time.perf_counter() - t0))
    search = _Search(g, kind, budget, deterministic)
    seed = 0
    for v in forced_detectors(g, kind):
        seed |= 1 << v
    completed = search.run(seed, cap=min(k, g.n) + 1, stop_at_first=True)
    stats = SolverStats(search.nodes, time.perf_counter() - t0)
    if search.best is not None:
        witness = search.best
        bad = verify(g, witness, kind)
        if bad is not None:
            raise RuntimeError(f"solver produced an invalid witness: {bad}")
        return FeasibilityResult(_witness_tuple(witness), True, stats)
    return FeasibilityResult(None, completed, stats)
