import random
from itertools import combinations

import pytest

from redic.detection import CodeKind, verify
from redic.existence import closed_twins, exists_red_ic
from redic.generators import enum_cubic
from redic.graphs import (
    build_graph,
    cartesian_product,
    complete_multipartite,
    cycle_graph,
    hypercube,
    path_graph,
    star_graph,
    torus,
)
from redic.solver import Budget, feasible_at, forced_detectors, lower_bound, solve_min


def random_graph(rng, n, p=0.5):
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def brute_minimum(g, kind):
    for k in range(g.n + 1):
        for combo in combinations(range(g.n), k):
            if verify(g, combo, kind, all_pairs=True) is None:
                return k
    return None


def test_forced_detectors_examples():
    assert forced_detectors(star_graph(3)) == {0, 1, 2, 3}
    for n in (4, 5, 8):
        assert forced_detectors(cycle_graph(n)) == set(range(n))
    assert forced_detectors(hypercube(3)) == frozenset()
    with pytest.raises(ValueError):
        forced_detectors(path_graph(5))
    assert forced_detectors(star_graph(3), CodeKind.IC) == frozenset()


def test_lower_bound_values():
    g31 = build_graph(31, [(0, i) for i in range(1, 31)])
    assert lower_bound(g31, CodeKind.RED_IC).log_bound == 6
    tree14 = build_graph(14, [(i, i + 1) for i in range(13)])
    assert lower_bound(tree14, CodeKind.RED_IC).tree_bound == 12
    cubic14 = next(iter(enum_cubic(14)))
    assert lower_bound(cubic14, CodeKind.RED_IC).cubic_bound == 8
    assert lower_bound(g31, CodeKind.IC).log_bound == 5
    assert lower_bound(g31, CodeKind.IC).value == 5


def test_torus_bound_requires_provenance():
    t = torus(6, 6)
    rep = lower_bound(t, CodeKind.RED_IC)
    assert rep.torus_bound == -(-2 * 36 // 5) == 15
    # same structure built by hand gets no torus bound
    anon = build_graph(t.n, t.edges())
    assert lower_bound(anon, CodeKind.RED_IC).torus_bound is None
    # odd-by-odd and small tori are excluded
    assert lower_bound(torus(5, 5), CodeKind.RED_IC).torus_bound is None
    assert lower_bound(torus(4, 6), CodeKind.RED_IC).torus_bound is None


def test_solve_examples():
    assert solve_min(star_graph(3)).k == 4
    lad = cartesian_product(path_graph(2), path_graph(4))
    assert solve_min(lad).k == 6
    assert brute_minimum(lad, CodeKind.RED_IC) == 6  # independent of the search
    assert solve_min(complete_multipartite([2, 2, 2])).k == 6


def test_solve_infeasible():
    out = solve_min(path_graph(6))
    assert out.status == "infeasible" and out.reason.why == "support-degree"
    out = solve_min(build_graph(3, [(0, 1), (1, 2), (0, 2)]), CodeKind.IC)
    assert out.status == "infeasible" and out.reason.why == "closed-twins"


def test_feasible_at_examples():
    c4 = cycle_graph(4)
    res = feasible_at(c4, CodeKind.RED_IC, 4)
    assert res.witness == (0, 1, 2, 3)
    res = feasible_at(c4, CodeKind.RED_IC, 3)
    assert res.witness is None and res.exhaustive


def test_brute_force_oracle_random():
    rng = random.Random(101)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 8), rng.uniform(0.15, 0.85))
        for kind in (CodeKind.IC, CodeKind.RED_IC):
            expect = brute_minimum(g, kind)
            out = solve_min(g, kind)
            got = out.k if out.is_optimal else None
            assert got == expect, (g.edges(), kind)


def test_optimal_outcomes_satisfy_counting_laws():
    rng = random.Random(103)
    seen = 0
    while seen < 150:
        g = random_graph(rng, rng.randint(4, 11), rng.uniform(0.2, 0.8))
        out = solve_min(g, CodeKind.RED_IC)
        if not out.is_optimal:
            continue
        k, n = out.k, g.n
        assert n.bit_length() + 1 <= k <= n  # ceil(log2(n+1)) + 1
        assert n <= 2 ** (k - 1) - 1
        assert k >= 4  # no graph does it with three or fewer
        assert verify(g, out.witness, CodeKind.RED_IC, all_pairs=True) is None
        out_ic = solve_min(g, CodeKind.IC)
        if out_ic.is_optimal:
            assert n <= 2 ** out_ic.k - 1
        seen += 1


def test_forced_set_inside_every_minimum_witness():
    rng = random.Random(107)
    seen = 0
    while seen < 200:
        g = random_graph(rng, rng.randint(4, 10), rng.uniform(0.2, 0.7))
        if exists_red_ic(g) is not None:
            continue
        forced = forced_detectors(g)
        kmin = brute_minimum(g, CodeKind.RED_IC)
        for combo in combinations(range(g.n), kmin):
            if verify(g, combo, CodeKind.RED_IC, all_pairs=True) is None:
                assert forced <= set(combo)
        seen += 1


def test_cubic_code_kinds_exist_together():
    # twin-free cubic graphs always admit a code, and the fault-tolerant
    # and plain variants exist together on cubic graphs
    for n in (4, 6, 8, 10):
        for g in enum_cubic(n):
            twin_free = len(closed_twins(g)) == 0
            red = solve_min(g, CodeKind.RED_IC)
            plain = solve_min(g, CodeKind.IC)
            assert (red.status == "infeasible") == (plain.status == "infeasible")
            assert twin_free == (red.status != "infeasible")


def test_deterministic_repeatability():
    g = cartesian_product(path_graph(2), cycle_graph(7))
    a = solve_min(g)
    b = solve_min(g)
    assert a.witness == b.witness and a.stats.nodes == b.stats.nodes


def test_feasibility_boundary_matches_minimum():
    rng = random.Random(109)
    seen = 0
    while seen < 60:
        g = random_graph(rng, rng.randint(4, 8), rng.uniform(0.2, 0.8))
        out = solve_min(g, CodeKind.RED_IC)
        if not out.is_optimal:
            continue
        at = feasible_at(g, CodeKind.RED_IC, out.k)
        assert at.witness is not None and len(at.witness) <= out.k
        below = feasible_at(g, CodeKind.RED_IC, out.k - 1)
        assert below.witness is None and below.exhaustive
        seen += 1


def test_feasibility_budget_flags_unknown():
    res = feasible_at(hypercube(4), CodeKind.RED_IC, 8, budget=Budget(max_nodes=2))
    if res.witness is None:
        assert not res.exhaustive


def test_budget_returns_bounds():
    g = hypercube(4)
    out = solve_min(g, budget=Budget(max_nodes=3))
    assert out.status == "bounded"
    assert out.lower <= out.upper == len(out.witness)
    assert verify(g, out.witness, CodeKind.RED_IC) is None
    full = solve_min(g)
    assert full.is_optimal and out.lower <= full.k <= out.upper


def test_empty_and_tiny_graphs():
    empty = build_graph(0, [])
    assert solve_min(empty, CodeKind.IC).k == 0
    assert solve_min(empty, CodeKind.RED_IC).status == "infeasible"
    single = build_graph(1, [])
    assert solve_min(single, CodeKind.IC).k == 1
    assert solve_min(single, CodeKind.RED_IC).status == "infeasible"
