import math
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcnorm import (
    build_graph,
    flow_to_edge_plan,
    min_transport_plan_tree,
    minimize_l1_flow,
    optimal_simultaneous_plan,
    plan_cost,
    purify_plan,
    tree_norm,
    validate_plan,
)
from tcnorm.errors import NotAPlan, NotATree
from tcnorm.plans import is_transport_forest, purify_steps, transport_bound
from tcnorm.vectors import TransportPlan

from conftest import connected_graphs, instances, path_graph, trees


def test_plan_cost_examples(G1, P3):
    assert plan_cost(P3.distance, {}) == 0
    assert plan_cost(G1.distance, {("a", "b"): 1}) == 1
    assert plan_cost(P3.distance, {("a", "b"): 2, ("b", "c"): 1}) == 4


def test_validate_plan_examples(G1):
    check = validate_plan({}, {}, G1)
    assert check.valid and check.simultaneous and check.edge_supported
    assert validate_plan({("a", "b"): 1}, {"a": 1, "b": -1})
    assert not validate_plan({("a", "b"): 1}, {"a": -1, "b": 1})


def test_plan_rejects_negative_and_self_pairs():
    with pytest.raises(NotAPlan):
        TransportPlan({("a", "b"): -1})
    with pytest.raises(NotAPlan):
        TransportPlan({("a", "a"): 1})
    assert not validate_plan({("a", "b"): -1}, {})


def test_flow_to_edge_plan_examples(P3):
    assert not flow_to_edge_plan(P3, {})
    assert flow_to_edge_plan(P3, {0: 2, 1: 1}) == {("a", "b"): 2, ("b", "c"): 1}
    assert flow_to_edge_plan(P3, {0: -1, 1: 1}) == {("b", "a"): 1, ("b", "c"): 1}


def test_purify_examples(G1, P3):
    plan = {("a", "b"): 2, ("a", "c"): 1}
    assert purify_plan(P3.distance, plan) == plan
    out = purify_plan(P3.distance, {("a", "b"): 1, ("b", "c"): 1}, {"a": 1, "c": -1})
    assert out == {("a", "c"): 1}
    assert plan_cost(P3.distance, out) == 3
    assert not purify_plan(G1.distance, {("a", "b"): 1, ("b", "a"): 1})
    with pytest.raises(NotAPlan):
        purify_plan(P3.distance, {("a", "b"): 1}, {"a": 1, "c": -1})


@settings(max_examples=80, deadline=None)
@given(connected_graphs(min_n=2, max_n=6), st.data())
def test_purify_never_raises_cost(g, data):
    pairs = [(a, b) for a in g.vertices for b in g.vertices if a != b]
    plan = TransportPlan(data.draw(st.dictionaries(st.sampled_from(pairs), st.integers(1, 4), max_size=6)))
    f = plan.boundary()
    d = g.distance
    cost = plan_cost(d, plan)
    last = plan
    for step in purify_steps(d, plan):
        assert step.boundary() == f
        assert plan_cost(d, step) <= cost
        cost = plan_cost(d, step)
        last = step
    assert validate_plan(last, f).simultaneous
    assert purify_plan(d, plan) == last


def test_optimal_simultaneous_examples(P3, C4):
    assert not optimal_simultaneous_plan(P3, {})
    plan = optimal_simultaneous_plan(P3, {"a": 2, "b": -1, "c": -1})
    assert plan == {("a", "b"): 1, ("a", "c"): 1}
    assert plan_cost(P3.distance, plan) == 4
    plan = optimal_simultaneous_plan(C4, {"v0": 1, "v1": 1, "v2": -1, "v3": -1})
    assert plan == {("v0", "v3"): 1, ("v1", "v2"): 1}


def networkx_plan_cost(g, f):
    """Transportation problem on sources x sinks, distances from networkx."""
    lengths = dict(nx.all_pairs_dijkstra_path_length(_nx(g), weight="w"))
    scale = math.lcm(*(e.length.denominator for e in g.edges)) if g.edges else 1
    D = nx.DiGraph()
    for v, m in f.items():
        D.add_node(v, demand=-int(m))
    for a in f:
        for b in f:
            if f[a] > 0 > f[b]:
                D.add_edge(a, b, weight=int(lengths[a][b] * scale))
    return Fraction(nx.min_cost_flow_cost(D), scale) if f else 0


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    for e in g.edges:
        h.add_edge(e.tail, e.head, w=e.length)
    return h


@settings(max_examples=100, deadline=None)
@given(instances(connected_graphs(max_n=7, max_extra=5)))
def test_optimal_simultaneous_plan_properties(inst):
    g, f = inst
    f = {v: m for v, m in f.items() if m}
    plan = optimal_simultaneous_plan(g, f)
    check = validate_plan(plan, f)
    assert check.valid and check.simultaneous
    assert plan_cost(g.distance, plan) == minimize_l1_flow(g, f).norm == networkx_plan_cost(g, f)


def test_min_transport_examples(G1, P3):
    assert not min_transport_plan_tree(P3, {})
    assert min_transport_plan_tree(G1, {"a": 1, "b": -1}) == {("a", "b"): 1}
    plan = min_transport_plan_tree(P3, {"a": 2, "b": -1, "c": -1})
    assert plan == {("a", "b"): 1, ("a", "c"): 1}
    assert plan_cost(P3.distance, plan) == 4
    g = path_graph([1, 1, 1])
    f = {"a": 1, "b": -1, "c": 1, "d": -1}
    plan = min_transport_plan_tree(g, f)
    assert plan == {("a", "b"): 1, ("c", "d"): 1}
    assert transport_bound(g, f) == 2


def test_min_transport_rejects_non_tree(C4):
    with pytest.raises(NotATree):
        min_transport_plan_tree(C4, {"v0": 1, "v1": -1})


@settings(max_examples=150, deadline=None)
@given(instances(trees(max_n=12)))
def test_min_transport_plan_properties(inst):
    g, f = inst
    plan = min_transport_plan_tree(g, f)
    support = sum(1 for m in f.values() if m)
    check = validate_plan(plan, f)
    assert check.valid and check.simultaneous
    assert len(plan) <= transport_bound(g, f) <= max(support - 1, 0)
    assert plan_cost(g.distance, plan) == tree_norm(g, f)
    assert is_transport_forest(plan)


def test_is_transport_forest():
    assert is_transport_forest({("a", "b"): 1, ("c", "b"): 1})
    assert not is_transport_forest({("a", "b"): 1, ("c", "b"): 1, ("a", "d"): 1, ("c", "d"): 1})


def test_plan_on_rational_lengths():
    g = build_graph(["a", "b", "c"], [("a", "b", "1/3"), ("b", "c", "1/2"), ("a", "c", "5/6")])
    plan = optimal_simultaneous_plan(g, {"a": 1, "c": -1})
    assert plan_cost(g.distance, plan) == g.distance["a", "c"]
