"""Minimum-l1 edge flows: the transportation cost norm of a mass function.

The norm of ``f`` is ``min ||phi||_1`` over edge flows with boundary ``-f``.
:func:`minimize_l1_flow` starts from the unique flow on a BFS spanning tree,
cancels negative cycles in the residual graph of the piecewise-linear cost,
then line-searches along cycles of the support until it is a forest.
"""
from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .chains import l1_norm
from .errors import CrossCheckFailure, EmptyInput, NonOptimalInput, NotSpanning, ValidationError
from .graph import MetricGraph, SpanningTree, _DSU, bfs_tree, complete_forest
from .vectors import ZERO, EdgeFlow, as_mass, to_fraction


@dataclass(frozen=True)
class OptimalFlowResult:
    flow: EdgeFlow
    norm: Fraction
    supporting_tree: SpanningTree
    pivot_count: int


def weighted_median_linesearch(values: Sequence[tuple]) -> Fraction:
    """Smallest minimizer of ``t -> sum_i w_i |a_i - t|`` over ``(a_i, w_i)`` pairs.

    This is the smallest ``a_k`` whose cumulative weight (all ``a_i <= a_k``)
    reaches half the total.
    """
    if not values:
        raise EmptyInput("weighted median of an empty list")
    pts = []
    for a, w in values:
        a, w = to_fraction(a), to_fraction(w)
        if w <= 0:
            raise ValidationError(f"weight {w} is not positive")
        pts.append((a, w))
    pts.sort()
    half = sum((w for _, w in pts), ZERO) / 2
    acc = ZERO
    for a, w in pts:
        acc += w
        if acc >= half:
            return a
    raise AssertionError("unreachable")


def initial_tree_flow(g: MetricGraph, t: SpanningTree, f: Mapping) -> EdgeFlow:
    """The unique flow supported on ``t`` with boundary ``-f``.

    Edge ``e`` carries ``-f(S_e)``, where ``S_e`` is the half of the tree on
    the head side of ``e``.
    """
    if t.graph is not g:
        raise NotSpanning("tree belongs to a different graph")
    f = as_mass(f, g.index)
    parent_edge, _, order = t._rooted
    sub = [f[v] for v in g.vertices]
    phi = {}
    for x in reversed(order[1:]):
        e = parent_edge[x]
        tail, head = g.ends(e)
        phi[e] = -sub[x] if head == x else sub[x]
        sub[tail if head == x else head] += sub[x]
    return EdgeFlow._wrap(phi)


def _arc_costs(g: MetricGraph, phi: Mapping[int, Fraction], scale: int) -> list[int]:
    # arc 2e raises phi(e), arc 2e+1 lowers it; cost is the one-sided slope
    costs = []
    for e, edge in enumerate(g.edges):
        c = int(edge.length * scale)
        v = phi.get(e, ZERO)
        costs.append(c if v >= 0 else -c)
        costs.append(c if v <= 0 else -c)
    return costs


def _scale(g: MetricGraph) -> int:
    return math.lcm(*(e.length.denominator for e in g.edges)) if g.edges else 1


def _arc_ends(g: MetricGraph) -> tuple[list[int], list[int]]:
    tails, heads = [], []
    for e in range(g.m):
        a, b = g.ends(e)
        tails += [a, b]
        heads += [b, a]
    return tails, heads


def cancel_negative_cycles(g: MetricGraph, phi: Mapping[int, Fraction], backend=None) -> tuple[EdgeFlow, int]:
    """Push flow around negative residual cycles until none is left.

    Each push stops when the first edge of the cycle reaches zero flow, so
    every cancellation lowers the norm by a positive amount.
    """
    phi = dict(phi)
    scale = _scale(g)
    tails, heads = _arc_ends(g)
    pivots = 0
    while True:
        cycle, _ = kernels.negative_cycle(g.n, tails, heads, _arc_costs(g, phi, scale), backend=backend)
        if cycle is None:
            return EdgeFlow._wrap(phi), pivots
        costs = _arc_costs(g, phi, scale)
        delta = min(abs(phi[a // 2]) for a in cycle if costs[a] < 0)
        for a in cycle:
            e = a // 2
            phi[e] = phi.get(e, ZERO) + (delta if a % 2 == 0 else -delta)
            if not phi[e]:
                del phi[e]
        pivots += 1


def residual_potential(g: MetricGraph, phi: Mapping[int, Fraction], backend=None) -> dict[str, Fraction]:
    """Shortest-path distances in the residual graph of an optimal flow.

    Raises :class:`CrossCheckFailure` if a negative cycle exists (``phi`` is
    not optimal).
    """
    scale = _scale(g)
    tails, heads = _arc_ends(g)
    cycle, dist = kernels.negative_cycle(g.n, tails, heads, _arc_costs(g, phi, scale), backend=backend)
    if cycle is not None:
        raise CrossCheckFailure("flow is not optimal: residual graph has a negative cycle")
    return {v: Fraction(dist[i], scale) for i, v in enumerate(g.vertices)}


def _support_cycle(g: MetricGraph, support: list[int]):
    """First cycle closed when adding support edges by index, or ``None``."""
    dsu = _DSU(g.n)
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in support:
        a, b = g.ends(e)
        if not dsu.union(a, b):
            # tree path from b back to a inside the forest built so far
            prev = {b: None}
            stack = [b]
            while stack:
                x = stack.pop()
                for f, y in adj.get(x, ()):
                    if y not in prev:
                        prev[y] = (f, x)
                        stack.append(y)
            xi = {e: 1}
            x = a
            while prev[x] is not None:
                f, p = prev[x]
                # the cycle walks p -> x on this edge
                xi[f] = 1 if g.index[g.edges[f].tail] == p else -1
                x = p
            return xi
        adj.setdefault(a, []).append((e, b))
        adj.setdefault(b, []).append((e, a))
    return None


def tree_support_extract(g: MetricGraph, phi: Mapping[int, Fraction]) -> tuple[EdgeFlow, SpanningTree]:
    """Remove cycles from the support of an optimal flow without changing its norm.

    Along each support cycle ``C`` the norm of ``phi + t * xi_C`` is convex
    and piecewise affine in ``t``; moving to its smallest minimizing
    breakpoint zeroes at least one edge of ``C``.
    """
    phi = dict(phi)
    while True:
        xi = _support_cycle(g, sorted(e for e, v in phi.items() if v))
        if xi is None:
            break
        points = [(-s * phi[e], g.edges[e].length) for e, s in xi.items()]
        t = weighted_median_linesearch(points)
        before = sum((g.edges[e].length * abs(phi[e]) for e in xi), ZERO)
        after = sum((g.edges[e].length * abs(phi[e] + t * s) for e, s in xi.items()), ZERO)
        if after < before:
            raise NonOptimalInput(f"shifting along a support cycle lowers the norm by {before - after}")
        for e, s in xi.items():
            phi[e] += t * s
            if not phi[e]:
                del phi[e]
    flow = EdgeFlow._wrap(phi)
    return flow, complete_forest(g, flow.support)


def minimize_l1_flow(g: MetricGraph, f: Mapping, backend=None) -> OptimalFlowResult:
    """Optimal flow with boundary ``-f``, supported on a spanning tree."""
    f = as_mass(f, g.index)
    phi = initial_tree_flow(g, bfs_tree(g), f)
    phi, pivots = cancel_negative_cycles(g, phi, backend=backend)
    phi, tree = tree_support_extract(g, phi)
    return OptimalFlowResult(phi, l1_norm(g, phi), tree, pivots)


def tc_norm(g: MetricGraph, f: Mapping) -> Fraction:
    return minimize_l1_flow(g, f).norm
