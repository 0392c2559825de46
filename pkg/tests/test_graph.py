import itertools
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from tcnorm import (
    boundary_apply,
    build_graph,
    count_spanning_trees,
    enumerate_spanning_trees,
    find_bridges,
    fundamental_cycles,
    shortest_path_metric,
)
from tcnorm.errors import (
    Disconnected,
    DuplicateEdge,
    LoopEdge,
    NonpositiveLength,
    NotSpanning,
    TooManyTrees,
    UnknownVertex,
)
from tcnorm.graph import SpanningTree, bfs_tree, cycle_order, side_of

from conftest import connected_graphs, cycle_graph


def brute_distance(g, a, b):
    """Shortest length over all simple paths, by enumeration."""
    best = None
    others = [v for v in g.vertices if v not in (a, b)]
    for k in range(len(others) + 1):
        for mid in itertools.permutations(others, k):
            seq = (a, *mid, b)
            total = Fraction(0)
            for x, y in zip(seq, seq[1:]):
                e = g.edge_between(x, y)
                if e is None:
                    break
                total += g.edges[e].length
            else:
                if best is None or total < best:
                    best = total
    return best


def bridges_by_deletion(g):
    out = set()
    for e in range(g.m):
        h = nx.Graph()
        h.add_nodes_from(g.vertices)
        h.add_edges_from(edge[:2] for i, edge in enumerate(g.edges) if i != e)
        if not nx.is_connected(h):
            out.add(e)
    return out


def test_build_single_edge(G1):
    assert G1.vertices == ("a", "b")
    assert G1.edges[0].tail == "a" and G1.edges[0].head == "b"


def test_build_path(P3):
    assert P3.n == 3 and P3.m == 2
    assert [e.length for e in P3.edges] == [1, 2]


@pytest.mark.parametrize(
    "vertices, edges, error",
    [
        (["a", "b"], [("a", "b", 1), ("b", "a", 2)], DuplicateEdge),
        (["a", "b"], [("a", "a", 1), ("a", "b", 1)], LoopEdge),
        (["a", "b", "c"], [("a", "b", 1)], Disconnected),
        (["a", "b"], [("a", "b", 0)], NonpositiveLength),
        (["a", "b"], [("a", "b", "-1/2")], NonpositiveLength),
        (["a", "b"], [("a", "z", 1)], UnknownVertex),
    ],
)
def test_build_errors(vertices, edges, error):
    with pytest.raises(error):
        build_graph(vertices, edges)


def test_error_names_offender():
    with pytest.raises(Disconnected, match="'c'"):
        build_graph(["a", "b", "c"], [("a", "b", 1)])


def test_rational_lengths_exact():
    g = build_graph(["a", "b"], [("a", "b", "0.1")])
    assert g.edges[0].length == Fraction(1, 10)


def test_distances_examples(G1, P3):
    assert G1.distance["a", "b"] == 1
    assert P3.distance["a", "c"] == 3


def test_triangle_long_edge_is_undercut():
    g = build_graph(["x", "y", "z"], [("x", "y", 1), ("y", "z", 1), ("z", "x", 3)])
    d = shortest_path_metric(g)
    assert d["x", "z"] == brute_distance(g, "x", "z") == 2


def test_path_tie_break_is_lexicographic(C4):
    assert C4.distance.path("v0", "v2") == ("v0", "v1", "v2")
    assert C4.distance.path("v2", "v0") == ("v2", "v1", "v0")


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=6))
def test_distances_match_brute_force(g):
    d = g.distance
    for a, b in itertools.permutations(g.vertices, 2):
        assert d[a, b] == brute_distance(g, a, b)
        seq = d.path(a, b)
        assert seq[0] == a and seq[-1] == b
        assert sum(g.edges[g.edge_between(x, y)].length for x, y in zip(seq, seq[1:])) == d[a, b]


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=10, max_extra=8))
def test_metric_axioms(g):
    d = g.distance
    for x in g.vertices:
        assert d[x, x] == 0
    for x, y in itertools.permutations(g.vertices, 2):
        assert d[x, y] > 0 and d[x, y] == d[y, x]
    for x, y, z in itertools.product(g.vertices, repeat=3):
        assert d[x, z] <= d[x, y] + d[y, z]
    for e in g.edges:
        assert d[e.tail, e.head] <= e.length


def test_bridges_examples(P3, C4, lollipop):
    assert find_bridges(P3) == {0, 1}
    assert find_bridges(C4) == set()
    assert find_bridges(lollipop) == {3} == bridges_by_deletion(lollipop)


@settings(max_examples=80, deadline=None)
@given(connected_graphs(max_n=8, max_extra=5))
def test_bridges_by_deletion_and_by_cycles(g):
    bridges = find_bridges(g)
    assert bridges == bridges_by_deletion(g)
    on_cycle = set()
    for xi in fundamental_cycles(g, bfs_tree(g)):
        on_cycle |= set(xi)
    assert bridges == set(range(g.m)) - on_cycle


def test_spanning_tree_counts(P3, C4, K4):
    assert len(list(enumerate_spanning_trees(P3))) == 1
    trees = list(enumerate_spanning_trees(C4))
    assert len(trees) == 4
    assert {frozenset(range(4)) - t.edges for t in trees} == {frozenset({e}) for e in range(4)}
    # Cayley: n^(n-2)
    assert len(list(enumerate_spanning_trees(K4))) == 4 ** 2


def test_too_many_trees(K4):
    with pytest.raises(TooManyTrees) as info:
        list(enumerate_spanning_trees(K4, cap=10))
    assert info.value.count == 16 and info.value.cap == 10


def laplacian_det(g):
    idx = g.index
    L = np.zeros((g.n, g.n))
    for e in g.edges:
        a, b = idx[e.tail], idx[e.head]
        L[a, a] += 1
        L[b, b] += 1
        L[a, b] -= 1
        L[b, a] -= 1
    return round(np.linalg.det(L[1:, 1:])) if g.n > 1 else 1


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=7, max_extra=8))
def test_enumeration_matches_kirchhoff(g):
    trees = list(enumerate_spanning_trees(g))
    assert len(trees) == len({t.edges for t in trees}) == laplacian_det(g) == count_spanning_trees(g)


def test_fundamental_cycles_examples(P3, C4, K4):
    assert fundamental_cycles(P3, SpanningTree(P3, frozenset({0, 1}))) == []
    t = SpanningTree(C4, frozenset({0, 1, 3}))
    (xi,) = fundamental_cycles(C4, t)
    assert set(xi) == {0, 1, 2, 3} and xi[2] == 1
    assert not boundary_apply(C4, xi)
    t = bfs_tree(K4)
    cycles = fundamental_cycles(K4, t)
    assert len(cycles) == 3
    for e, xi in zip(t.non_tree_edges, cycles):
        assert xi[e] == 1
        assert not boundary_apply(K4, xi)


@settings(max_examples=80, deadline=None)
@given(connected_graphs(max_n=8, max_extra=6))
def test_cycle_vectors_are_closed(g):
    t = bfs_tree(g)
    cycles = fundamental_cycles(g, t)
    assert len(cycles) == g.m - g.n + 1
    for xi in cycles:
        assert set(xi.values()) <= {-1, 1}
        assert not boundary_apply(g, xi)


def test_not_spanning(C4):
    with pytest.raises(NotSpanning):
        SpanningTree(C4, frozenset({0, 1}))
    with pytest.raises(NotSpanning):
        SpanningTree(C4, frozenset({0, 1, 2, 3}))


def test_side_of_head(P3):
    assert side_of(P3, 0) == {"b", "c"}
    assert side_of(P3, 1) == {"c"}


def test_cycle_order():
    g = cycle_graph([1, 2, 3, 4])
    order, edges = cycle_order(g)
    n = len(order)
    for i in range(n):
        e = g.edges[edges[i]]
        assert {e.tail, e.head} == {order[i], order[i - 1]}
