import io

import pytest

from redic.generators import are_isomorphic, canonical_key, enum_cubic, enum_trees, read_graph6_stream
from redic.graphs import Graph6Error, build_graph, cycle_graph, write_graph6

TREE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106, 11: 235, 12: 551, 13: 1301}
CUBIC_COUNTS = {4: 1, 6: 2, 8: 5, 10: 19, 12: 85}


@pytest.mark.parametrize("n,count", sorted(TREE_COUNTS.items()))
def test_tree_counts(n, count):
    assert sum(1 for _ in enum_trees(n)) == count


@pytest.mark.parametrize("n,count", sorted(CUBIC_COUNTS.items()))
def test_cubic_counts(n, count):
    graphs = list(enum_cubic(n))
    assert len(graphs) == count
    assert all(g.is_cubic() and g.is_connected() for g in graphs)


def test_no_isomorphic_duplicates():
    for n in range(1, 10):
        keys = [canonical_key(t) for t in enum_trees(n)]
        assert len(keys) == len(set(keys))
    for n in (4, 6, 8, 10):
        keys = [canonical_key(g) for g in enum_cubic(n)]
        assert len(keys) == len(set(keys))


def test_streams_are_deterministic_and_restartable():
    a = [write_graph6(g) for g in enum_cubic(8)]
    b = [write_graph6(g) for g in enum_cubic(8)]
    assert a == b
    a = [write_graph6(t) for t in enum_trees(7)]
    b = [write_graph6(t) for t in enum_trees(7)]
    assert a == b


def test_odd_cubic_is_empty():
    assert list(enum_cubic(7)) == []
    assert list(enum_cubic(3)) == []


def test_canonical_key_invariant_under_relabeling():
    import random

    rng = random.Random(19)
    for _ in range(40):
        n = rng.randint(1, 8)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        g = build_graph(n, edges)
        perm = list(range(n))
        rng.shuffle(perm)
        h = build_graph(n, [(perm[u], perm[v]) for u, v in edges])
        assert canonical_key(g) == canonical_key(h)
        assert are_isomorphic(g, h)
    assert not are_isomorphic(cycle_graph(4), build_graph(4, [(0, 1), (0, 2), (0, 3)]))


def test_read_graph6_stream():
    lines = b"\n".join(write_graph6(t) for t in enum_trees(5)) + b"\n"
    parsed = list(read_graph6_stream(io.BytesIO(lines)))
    assert len(parsed) == 3
    assert list(read_graph6_stream(io.BytesIO(b""))) == []


def test_read_graph6_stream_reports_line_numbers(tmp_path):
    path = tmp_path / "g.g6"
    good = write_graph6(cycle_graph(4))
    path.write_bytes(good + b"\nCl\n\x03bad\n" + good + b"\n")
    with pytest.raises(Graph6Error, match="line 3"):
        list(read_graph6_stream(path))
    kept = list(read_graph6_stream(path, strict=False))
    assert len(kept) == 3
