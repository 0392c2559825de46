"""Closed forms for trees and cycles, and the reduction to bridgeless blocks."""
from __future__ import annotations

import heapq
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from .chains import boundary_apply
from .errors import NotATree
from .graph import MetricGraph, cycle_order, find_bridges, side_of
from .solver import tc_norm, weighted_median_linesearch
from .vectors import ZERO, EdgeFlow, MassFunction, TransportPlan, as_mass


@dataclass
class AdditionCounter:
    """Counts rational additions performed through :meth:`add`."""

    additions: int = 0

    def add(self, a, b):
        self.additions += 1
        return a + b


def _require_tree(g: MetricGraph):
    if not g.is_tree():
        raise NotATree(f"graph has {g.m} edges on {g.n} vertices; a tree has {g.n - 1}")


def half_tree_masses(g: MetricGraph, f: Mapping, counter: AdditionCounter | None = None) -> dict[int, Fraction]:
    """``f(S_e)`` for every edge of a tree, summing each half-tree directly.

    This is the naive evaluation: about ``|E| * |V| / 2`` additions.
    """
    _require_tree(g)
    f = as_mass(f, g.index)
    counter = counter or AdditionCounter()
    out = {}
    for e in range(g.m):
        total = None
        for v in side_of(g, e):
            total = f[v] if total is None else counter.add(total, f[v])
        out[e] = total
    return out


def tree_norm(g: MetricGraph, f: Mapping, counter: AdditionCounter | None = None) -> Fraction:
    """``sum_e |f(S_e)| * length(e)`` on a tree."""
    counter = counter or AdditionCounter()
    masses = half_tree_masses(g, f, counter)
    total = None
    for e, fs in masses.items():
        term = abs(fs) * g.edges[e].length
        total = term if total is None else counter.add(total, term)
    return total if total is not None else ZERO


def tree_norm_leaf_peel(g: MetricGraph, f: Mapping, counter: AdditionCounter | None = None) -> Fraction:
    """Tree norm by repeatedly cutting a leaf and pushing its mass inward.

    Uses at most ``2|E| - 1`` additions: per cut, one to merge the leaf mass
    into its neighbour and one to accumulate the edge cost; the last cut needs
    no merge and the first accumulation is a plain assignment.
    """
    _require_tree(g)
    f = as_mass(f, g.index)
    counter = counter if counter is not None else AdditionCounter()
    if g.m == 0:
        return ZERO
    mass = {v: f[v] for v in g.vertices}
    degree = {v: len(g.adjacency[g.index[v]]) for v in g.vertices}
    removed: set[int] = set()
    leaves = [v for v in g.vertices if degree[v] == 1]
    heapq.heapify(leaves)
    total = None
    remaining = g.m
    while remaining:
        v = heapq.heappop(leaves)
        e, j = next((e, j) for e, j in g.adjacency[g.index[v]] if e not in removed)
        u = g.vertices[j]
        term = abs(mass[v]) * g.edges[e].length
        total = term if total is None else counter.add(total, term)
        removed.add(e)
        remaining -= 1
        if not remaining:
            break
        mass[u] = counter.add(mass[u], mass[v])
        degree[u] -= 1
        if degree[u] == 1:
            heapq.heappush(leaves, u)
    return total


def tree_optimal_plan(g: MetricGraph, f: Mapping) -> TransportPlan:
    """Edge-supported optimal plan on a tree.

    Each edge moves ``|f(S_e)|`` out of the half-tree holding surplus: from
    head to tail when ``f(S_e) > 0``, from tail to head when ``f(S_e) < 0``.
    """
    plan = {}
    for e, fs in half_tree_masses(g, f).items():
        edge = g.edges[e]
        if fs < 0:
            plan[edge.tail, edge.head] = -fs
        elif fs > 0:
            plan[edge.head, edge.tail] = fs
    return TransportPlan(plan)


@dataclass(frozen=True)
class CycleSolution:
    norm: Fraction
    k: int  # index of the partial sum chosen as the shift
    shift: Fraction
    order: tuple[str, ...]  # v_0 .. v_{N-1}
    partial_sums: tuple[Fraction, ...]
    flow: EdgeFlow


def cycle_solution(g: MetricGraph, f: Mapping) -> CycleSolution:
    """Optimal flow on a cycle via a weighted median of partial sums.

    With ``alpha_i = f(v_0) + ... + f(v_i)``, the flow from ``v_i`` to
    ``v_{i+1}`` is ``alpha_i - t`` for any shift ``t``; the best shift is a
    weighted median of the ``alpha_i``, weighted by the length of the edge
    joining ``v_i`` and ``v_{i+1}``.
    """
    f = as_mass(f, g.index)
    order, edges = cycle_order(g)
    n = len(order)
    alphas = []
    acc = ZERO
    for v in order:
        acc += f[v]
        alphas.append(acc)
    # edges[i] joins v_i and v_{i-1}, so v_i -> v_{i+1} is edges[(i + 1) % n]
    forward = [edges[(i + 1) % n] for i in range(n)]
    t = weighted_median_linesearch([(alphas[i], g.edges[forward[i]].length) for i in range(n)])
    k = alphas.index(t)
    flow = {}
    norm = ZERO
    for i in range(n):
        e = forward[i]
        value = alphas[i] - t
        norm += abs(value) * g.edges[e].length
        sign = 1 if g.edges[e].head == order[(i + 1) % n] else -1
        flow[e] = sign * value
    return CycleSolution(norm, k, t, tuple(order), tuple(alphas), EdgeFlow(flow))


def cycle_norm(g: MetricGraph, f: Mapping) -> Fraction:
    return cycle_solution(g, f).norm


@dataclass(frozen=True)
class BridgeReduction:
    """A problem split into fixed bridge flows and independent bridgeless blocks.

    ``components[i]`` is a block graph, ``component_masses[i]`` the residual
    mass on it and ``edge_maps[i][j]`` the original index of its edge ``j``.
    """

    bridges: frozenset[int]
    bridge_flow: EdgeFlow
    residual_mass: MassFunction
    bridge_cost: Fraction
    components: list[MetricGraph]
    component_masses: list[MassFunction]
    edge_maps: list[list[int]] = field(repr=False)

    def total_norm(self, solve: Callable[[MetricGraph, MassFunction], Fraction]) -> Fraction:
        return self.bridge_cost + sum((solve(c, m) for c, m in zip(self.components, self.component_masses)), ZERO)

    def assemble(self, component_flows: list[Mapping[int, Fraction]]) -> EdgeFlow:
        """Lift per-block flows back to the original edges and add the bridges."""
        data = dict(self.bridge_flow)
        for emap, flow in zip(self.edge_maps, component_flows):
            for j, v in flow.items():
                data[emap[j]] = v
        return EdgeFlow(data)


def bridge_reduce(g: MetricGraph, f: Mapping) -> BridgeReduction:
    """Fix the flow on every bridge and split the rest into bridgeless blocks.

    A bridge ``e`` must carry ``-f(S_e)`` (``S_e``: the side of the head), the
    same value as on a tree. The blocks then see the residual mass
    ``f + boundary(bridge_flow)``, which sums to zero on each block.
    """
    f = as_mass(f, g.index)
    bridges = find_bridges(g)
    bflow = {}
    cost = ZERO
    for e in sorted(bridges):
        fs = sum((f[v] for v in side_of(g, e)), ZERO)
        bflow[e] = -fs
        cost += abs(fs) * g.edges[e].length
    bridge_flow = EdgeFlow(bflow)
    residual = f + boundary_apply(g, bridge_flow)

    # blocks: components of the graph without its bridges
    comp_of = {}
    blocks: list[list[str]] = []
    for v in g.vertices:
        if v in comp_of:
            continue
        cid = len(blocks)
        members = []
        stack = [g.index[v]]
        comp_of[v] = cid
        while stack:
            x = stack.pop()
            members.append(g.vertices[x])
            for e, y in g.adjacency[x]:
                w = g.vertices[y]
                if e not in bridges and w not in comp_of:
                    comp_of[w] = cid
                    stack.append(y)
        blocks.append(sorted(members, key=g.index.__getitem__))
    block_edges: list[list[int]] = [[] for _ in blocks]
    for e, edge in enumerate(g.edges):
        if e not in bridges:
            block_edges[comp_of[edge.tail]].append(e)

    components, masses = [], []
    for members, eids in zip(blocks, block_edges):
        components.append(g.subgraph(eids, members))
        masses.append(MassFunction({v: residual[v] for v in members}))
    return BridgeReduction(bridges, bridge_flow, residual, cost, components, masses, block_edges)


def bridge_norm(g: MetricGraph, f: Mapping) -> Fraction:
    """Norm via bridge reduction; blocks use the cycle formula when they can."""
    def solve(c: MetricGraph, m: MassFunction) -> Fraction:
        if c.m == 0 or not m:
            return ZERO
        if c.is_cycle():
            return cycle_norm(c, m)
        return tc_norm(c, m)

    return bridge_reduce(g, f).total_norm(solve)
