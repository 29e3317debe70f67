import random

import pytest

from evoderive.graph import (
    Graph,
    GraphFormatError,
    bfs_distances,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    degree,
    distance,
    format_graph,
    has_odd_cycle,
    is_connected,
    neighbors,
    parse_graph,
    path_graph,
    relabel,
    twin_partition,
)
from evoderive.suite import random_connected_graph, random_permutation


def test_parse_seven_vertex(seven):
    assert seven.n == 7 and seven.m == 6
    assert neighbors(seven, 1) == neighbors(seven, 2) == {3}
    assert neighbors(seven, 3) == {1, 2, 4}


def test_parse_comments_and_roundtrip(seven):
    text = "# header comment\n\n7 6\n1 3\n2 3 # trailing\n3 4\n4 5\n4 6\n4 7\n"
    assert parse_graph(text) == seven
    assert parse_graph(format_graph(seven)) == seven


def test_parse_p2():
    assert parse_graph("2 1\n1 2\n") == path_graph(2)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("3 3\n1 1\n1 2\n2 3\n", "loop"),
        ("7 7\n1 3\n2 3\n3 4\n4 5\n4 6\n4 7\n", "7"),
        ("3 2\n1 2\n1 2\n", "duplicate"),
        ("3 1\n1 4\n", "range"),
        ("3 1\n2 1\n", ""),
        ("3 1\n1 x\n", ""),
        ("", ""),
        ("0 0\n", ""),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(text)
    assert fragment in str(exc.value)


def test_neighbors_examples(seven, k23):
    assert neighbors(seven, 4) == {3, 5, 6, 7}
    assert neighbors(path_graph(2), 1) == {2}
    assert neighbors(k23, 1) == {4, 5}
    assert degree(seven, 4) == 4
    with pytest.raises(ValueError):
        neighbors(seven, 8)


def test_connectivity(seven):
    assert is_connected(seven)
    assert not is_connected(Graph.from_edges(2, []))
    assert is_connected(Graph.from_edges(1, []))


def test_distances(seven, k23):
    assert distance(seven, 1, 7) == 3
    assert bfs_distances(seven, 1)[7] == 3
    with pytest.raises(ValueError):
        distance(Graph.from_edges(3, [(1, 2)]), 1, 3)
    assert not has_odd_cycle(k23)
    assert has_odd_cycle(cycle_graph(3))
    assert has_odd_cycle(cycle_graph(5))
    assert not has_odd_cycle(cycle_graph(6))


def test_twin_partitions(seven, k23):
    assert twin_partition(seven).classes == ((1, 2), (3,), (4,), (5, 6, 7))
    assert twin_partition(k23).classes == ((1, 2, 3), (4, 5))
    tp = twin_partition(path_graph(4))
    assert tp.classes == ((1,), (2,), (3,), (4,))
    assert tp.is_twin_free()
    assert twin_partition(complete_graph(4)).is_twin_free()


def test_twin_partition_brute_force():
    rng = random.Random(3)
    for _ in range(50):
        g = random_connected_graph(rng, 8)
        tp = twin_partition(g)
        for i in g.vertices:
            for j in g.vertices:
                assert tp.are_twins(i, j) == (neighbors(g, i) == neighbors(g, j))
        # twins are never adjacent: a loop-free neighbourhood cannot contain itself
        for cls in tp.classes:
            assert not any((a, b) in g.edges for a in cls for b in cls if a < b)


def test_sigma_makes_classes_contiguous(seven):
    tp = twin_partition(seven)
    assert tp.prefix == (0, 2, 3, 4, 7)
    for k, cls in enumerate(tp.classes):
        labels = sorted(tp.sigma[v - 1] for v in cls)
        assert labels == list(range(tp.prefix[k] + 1, tp.prefix[k + 1] + 1))


def test_relabel_preserves_structure():
    rng = random.Random(11)
    for _ in range(30):
        g = random_connected_graph(rng, 7)
        perm = random_permutation(rng, g.n)
        h = relabel(g, perm)
        assert h.m == g.m
        assert sorted(degree(h, perm[v - 1]) for v in g.vertices) == sorted(degree(g, v) for v in g.vertices)
        assert sorted(twin_partition(h).sizes) == sorted(twin_partition(g).sizes)
        assert has_odd_cycle(h) == has_odd_cycle(g)


def test_generators():
    assert complete_graph(5).m == 10
    assert complete_bipartite(3, 2).m == 6
    assert path_graph(1).m == 0
    with pytest.raises(ValueError):
        cycle_graph(2)
