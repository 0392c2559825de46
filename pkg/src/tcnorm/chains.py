"""Boundary operator, path characteristic vectors and the plan-to-flow map."""
from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction

from .errors import SameVertex, UnknownEdge, UnknownVertex
from .graph import MetricGraph
from .vectors import ZERO, EdgeFlow, MassFunction


def boundary_apply(g: MetricGraph, phi: Mapping[int, Fraction]) -> MassFunction:
    """Net inflow at every vertex: ``sum_{e: head=v} phi(e) - sum_{e: tail=v} phi(e)``."""
    out: dict[str, Fraction] = {}
    for e, value in phi.items():
        if not isinstance(e, int) or not 0 <= e < g.m:
            raise UnknownEdge(f"flow is defined on unknown edge {e!r}")
        edge = g.edges[e]
        out[edge.head] = out.get(edge.head, ZERO) + value
        out[edge.tail] = out.get(edge.tail, ZERO) - value
    return MassFunction._wrap(out)


def path_vector(g: MetricGraph, a: str, b: str) -> EdgeFlow:
    """Signed indicator of the selected shortest path from ``a`` to ``b``.

    An edge gets +1 when the path traverses it from tail to head, -1 when it
    goes against the orientation.
    """
    if a == b:
        raise SameVertex(f"path from {a!r} to itself")
    for x in (a, b):
        if x not in g.index:
            raise UnknownVertex(f"unknown vertex {x!r}")
    seq = g.distance.path(a, b)
    values = {}
    for x, y in zip(seq, seq[1:]):
        e = g.edge_between(x, y)
        values[e] = 1 if g.edges[e].tail == x else -1
    return EdgeFlow(values)


def plan_to_flow(g: MetricGraph, plan: Mapping[tuple[str, str], Fraction]) -> EdgeFlow:
    """Superpose every transport of ``plan`` along its selected shortest path."""
    acc: dict[int, Fraction] = {}
    for (a, b), mass in plan.items():
        if a == b or not mass:
            continue
        for e, sign in path_vector(g, a, b).items():
            acc[e] = acc.get(e, ZERO) + sign * mass
    return EdgeFlow._wrap(acc)


def l1_norm(g: MetricGraph, phi: Mapping[int, Fraction]) -> Fraction:
    """Length-weighted l1 norm ``sum_e length(e) * |phi(e)|``."""
    return sum((g.edges[e].length * abs(v) for e, v in phi.items()), ZERO)

