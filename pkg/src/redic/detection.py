"""Detection semantics: domination, distinguishing, code verification, share.

A detector set S is an identifying code (IC) when every vertex is at least
1-dominated (|N[v] & S| >= 1) and every vertex pair is 1-distinguished
(|(N[u] & S) symdiff (N[v] & S)| >= 1).  The fault-tolerant variant
(RED:IC) raises both thresholds to 2, which is equivalent to S remaining
an IC after the removal of any single detector.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable

from .graphs import Graph, bits, mask_of


class CodeKind(Enum):
    IC = "ic"
    RED_IC = "red-ic"

    @property
    def dom_req(self) -> int:
        return 1 if self is CodeKind.IC else 2

    @property
    def dist_req(self) -> int:
        return 1 if self is CodeKind.IC else 2


@dataclass(frozen=True)
class Violation:
    """Certificate of a failed verification.

    ``kind`` is "undominated" (vertex ``u`` has only ``count`` detectors in
    its closed neighborhood) or "undistinguished" (pair ``u``, ``v`` has the
    too-small detector symmetric difference ``delta``).
    """

    kind: str
    u: int
    v: int | None = None
    count: int | None = None
    delta: frozenset[int] | None = None

    def __str__(self) -> str:
        if self.kind == "undominated":
            return f"vertex {self.u} is only {self.count}-dominated"
        d = "{" + ",".join(map(str, sorted(self.delta))) + "}"
        return f"pair ({self.u},{self.v}) has detector symmetric difference {d}"


def _smask(g: Graph, detectors: Iterable[int] | int) -> int:
    if isinstance(detectors, int):
        return detectors
    m = mask_of(detectors)
    if m >> g.n:
        raise ValueError("detector index out of range")
    return m


def domination(g: Graph, detectors: Iterable[int] | int, v: int) -> int:
    """|N[v] & S|: how many detectors watch vertex v."""
    return (g.closed_nbhd(v) & _smask(g, detectors)).bit_count()


def delta(g: Graph, detectors: Iterable[int] | int, u: int, v: int) -> frozenset[int]:
    """Symmetric difference of the dominated views of u and v, as a vertex set.

    Equals (N[u] symdiff N[v]) & S since intersecting with S distributes
    over the symmetric difference.
    """
    if u == v:
        raise ValueError("delta needs two distinct vertices")
    s = _smask(g, detectors)
    return frozenset(bits((g.closed_nbhd(u) ^ g.closed_nbhd(v)) & s))


def _reach2(g: Graph, u: int) -> int:
    """Vertices within distance 2 of u (including u)."""
    m = g.closed_nbhd(u)
    for w in bits(g.adj[u]):
        m |= g.adj[w]
    return m


def verify(
    g: Graph,
    detectors: Iterable[int] | int,
    kind: CodeKind,
    *,
    all_pairs: bool = False,
) -> Violation | None:
    """Check the code conditions; return None on pass, else the first violation.

    Violations are reported deterministically: all vertices are checked for
    domination in ascending order, then pairs in lexicographic order.  By
    default only pairs at distance <= 2 are checked: once every vertex meets
    the domination threshold, a pair at distance >= 3 has disjoint closed
    neighborhoods and therefore a symmetric difference of at least twice the
    threshold.  ``all_pairs=True`` forces the literal all-pairs check.
    """
    s = _smask(g, detectors)
    dom_req, dist_req = kind.dom_req, kind.dist_req
    closed = g._closed
    for v in range(g.n):
        c = (closed[v] & s).bit_count()
        if c < dom_req:
            return Violation("undominated", v, count=c)
    for u in range(g.n):
        cu = closed[u]
        others = g.full_mask() if all_pairs else _reach2(g, u)
        others &= ~((1 << (u + 1)) - 1)
        for v in bits(others):
            if ((cu ^ closed[v]) & s).bit_count() < dist_req:
                return Violation("undistinguished", u, v, delta=frozenset(bits((cu ^ closed[v]) & s)))
    return None


def is_valid_code(g: Graph, detectors: Iterable[int] | int, kind: CodeKind) -> bool:
    return verify(g, detectors, kind) is None


def share(g: Graph, detectors: Iterable[int] | int, x: int) -> Fraction:
    """sh(x) = sum over v in N[x] of 1/dom(v), as an exact rational.

    Summed over all detectors this telescopes to exactly n whenever every
    vertex is dominated at all, which is why exact arithmetic matters: the
    per-detector bounds used for density arguments are equalities between
    fractions, not approximations.
    """
    s = _smask(g, detectors)
    if not (s >> x & 1):
        raise ValueError(f"vertex {x} is not a detector")
    total = Fraction(0)
    for v in bits(g.closed_nbhd(x)):
        d = (g.closed_nbhd(v) & s).bit_count()
        if d == 0:
            raise ValueError(f"share undefined: vertex {v} is undominated")
        total += Fraction(1, d)
    return total


@dataclass(frozen=True)
class RobustnessFailure:
    """Witness that S is not robust: removing ``removed`` (or nothing, when
    None) leaves the violation ``violation`` against the plain IC conditions."""

    removed: int | None
    violation: Violation


def robustness_check(g: Graph, detectors: Iterable[int] | int) -> RobustnessFailure | None:
    """Behavioral fault-tolerance: S and every S minus one detector must be an IC.

    Passes exactly when ``verify(g, S, RED_IC)`` passes; the equivalence is
    the point of the raised thresholds and is property-tested.
    """
    s = _smask(g, detectors)
    base = verify(g, s, CodeKind.IC)
    if base is not None:
        return RobustnessFailure(None, base)
    for x in bits(s):
        v = verify(g, s & ~(1 << x), CodeKind.IC)
        if v is not None:
            return RobustnessFailure(x, v)
    return None
