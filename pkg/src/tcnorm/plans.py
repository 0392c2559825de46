"""Transportation plans: cost, validation, conversions and optimal plans."""
from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction

from .errors import CrossCheckFailure, NotAPlan, NotATree
from .graph import DistanceMatrix, MetricGraph, SpanningTree, _DSU
from .solver import initial_tree_flow, minimize_l1_flow
from .vectors import ZERO, MassFunction, TransportPlan, as_mass


def plan_cost(d: DistanceMatrix, plan: Mapping[tuple[str, str], Fraction]) -> Fraction:
    """``W(P) = sum P(a, b) * d(a, b)``."""
    return sum((mass * d[a, b] for (a, b), mass in plan.items()), ZERO)


@dataclass(frozen=True)
class PlanCheck:
    valid: bool
    simultaneous: bool
    edge_supported: bool | None  # None when no graph was given

    def __bool__(self) -> bool:
        return self.valid


def validate_plan(plan: Mapping, f: Mapping, g: MetricGraph | None = None) -> PlanCheck:
    """Check ``f(x) = sum_a P(x, a) - P(a, x)`` for every ``x``.

    Also reports whether every transport goes from a vertex with ``f > 0`` to
    one with ``f < 0`` and, given ``g``, whether every transport is an edge.
    """
    try:
        plan = plan if isinstance(plan, TransportPlan) else TransportPlan(plan)
        f = as_mass(f)
    except (NotAPlan, ValueError):
        return PlanCheck(False, False, False if g is not None else None)
    valid = plan.boundary() == f
    simultaneous = all(f[a] > 0 and f[b] < 0 for a, b in plan)
    edges = None
    if g is not None:
        edges = all(g.edge_between(a, b) is not None for a, b in plan)
    return PlanCheck(valid, simultaneous, edges)


def flow_to_edge_plan(g: MetricGraph, phi: Mapping[int, Fraction]) -> TransportPlan:
    """Move ``|phi(e)|`` along each edge, in the direction given by the sign."""
    plan = {}
    for e, v in phi.items():
        edge = g.edges[e]
        if v > 0:
            plan[edge.tail, edge.head] = v
        elif v < 0:
            plan[edge.head, edge.tail] = -v
    return TransportPlan(plan)


def purify_steps(d: DistanceMatrix, plan: Mapping) -> Iterator[TransportPlan]:
    """Yield the plan after each rerouting step of :func:`purify_plan`."""
    plan = plan if isinstance(plan, TransportPlan) else TransportPlan(plan)
    f = plan.boundary()
    p = dict(plan)

    def bump(key, amount):
        a, b = key
        if a == b:
            return
        p[key] = p.get(key, ZERO) + amount
        if not p[key]:
            del p[key]

    while True:
        bad = next(((x, y) for x, y in sorted(p) if f[y] >= 0 or f[x] <= 0), None)
        if bad is None:
            return
        x, y = bad
        if f[y] >= 0:
            # y is not a sink, so some mass leaves it: shortcut x -> y -> z
            z = min((z for (s, z) in p if s == y), key=lambda z: (-p[y, z], z))
            m = min(p[x, y], p[y, z])
            bump((x, y), -m)
            bump((y, z), -m)
            bump((x, z), m)
        else:
            # x is not a source, so some mass enters it: shortcut w -> x -> y
            w = min((w for (w, t) in p if t == x), key=lambda w: (-p[w, x], w))
            m = min(p[w, x], p[x, y])
            bump((w, x), -m)
            bump((x, y), -m)
            bump((w, y), m)
        yield TransportPlan._wrap(p)


def purify_plan(d: DistanceMatrix, plan: Mapping, f: Mapping | None = None) -> TransportPlan:
    """Reroute through intermediate vertices until mass only goes sources to sinks.

    Each step replaces ``x -> y -> z`` by ``x -> z`` for the largest amount
    possible, which never raises the cost (triangle inequality).
    """
    plan = plan if isinstance(plan, TransportPlan) else TransportPlan(plan)
    if f is not None and plan.boundary() != as_mass(f):
        raise NotAPlan("plan does not transport the given masses")
    out = plan
    for out in purify_steps(d, plan):
        pass
    return out


def _decompose(g: MetricGraph, phi: Mapping[int, Fraction], f: MassFunction) -> TransportPlan:
    """Split an acyclic flow with boundary ``-f`` into source-to-sink transports.

    Repeatedly starts at the smallest remaining source, follows positive flow
    (smallest next vertex first) to the first vertex still in deficit, and
    ships the bottleneck amount.
    """
    out: dict[str, dict[str, Fraction]] = {}
    for e, v in phi.items():
        edge = g.edges[e]
        a, b = (edge.tail, edge.head) if v > 0 else (edge.head, edge.tail)
        out.setdefault(a, {})[b] = abs(v)
    rem = dict(f)
    plan: dict[tuple[str, str], Fraction] = {}
    while True:
        sources = [v for v, x in rem.items() if x > 0]
        if not sources:
            break
        a = min(sources)
        path = [a]
        x = a
        while rem.get(x, ZERO) >= 0:
            nxt = out.get(x)
            if not nxt or len(path) > g.n:
                raise CrossCheckFailure(f"flow cannot be decomposed from source {a!r}")
            x = min(nxt)
            path.append(x)
        b = x
        amount = min(rem[a], -rem[b], *(out[u][w] for u, w in zip(path, path[1:])))
        for u, w in zip(path, path[1:]):
            out[u][w] -= amount
            if not out[u][w]:
                del out[u][w]
        rem[a] -= amount
        rem[b] += amount
        plan[a, b] = plan.get((a, b), ZERO) + amount
    return TransportPlan(plan)


def optimal_simultaneous_plan(g: MetricGraph, f: Mapping) -> TransportPlan:
    """Optimal plan moving mass only from sources to sinks."""
    f = as_mass(f, g.index)
    result = minimize_l1_flow(g, f)
    plan = _decompose(g, result.flow, f)
    if plan_cost(g.distance, plan) != result.norm:
        raise CrossCheckFailure("decomposed plan cost differs from the flow norm")
    return plan


def flow_components(g: MetricGraph, phi: Mapping[int, Fraction], f: Mapping) -> int:
    """Components of ``(V, supp(phi))`` that contain a vertex with ``f != 0``."""
    dsu = _DSU(g.n)
    for e in phi:
        dsu.union(*g.ends(e))
    return len({dsu.find(g.index[v]) for v in f if f[v]})


def transport_bound(g: MetricGraph, f: Mapping, phi: Mapping[int, Fraction] | None = None) -> int:
    """``|supp f| - k`` with ``k`` the number of flow components meeting ``supp f``."""
    f = as_mass(f, g.index)
    if phi is None:
        phi = initial_tree_flow(g, SpanningTree(g, frozenset(range(g.m))), f)
    return len(f) - flow_components(g, phi, f)


def min_transport_plan_tree(g: MetricGraph, f: Mapping) -> TransportPlan:
    """Optimal source-to-sink plan on a tree with at most ``|supp f| - k`` transports.

    Edges are taken in the direction of positive flow. Each round picks the
    smallest source ``a``, walks forward until it first meets a sink ``b``,
    and ships the minimum of ``f(a)``, ``-f(b)`` and the flows on the walk.
    ``f = 0`` returns the empty plan.
    """
    if not g.is_tree():
        raise NotATree(f"graph has {g.m} edges on {g.n} vertices; a tree has {g.n - 1}")
    f = as_mass(f, g.index)
    if not f:
        return TransportPlan()
    phi = initial_tree_flow(g, SpanningTree(g, frozenset(range(g.m))), f)
    plan = _decompose(g, phi, f)
    bound = len(f) - flow_components(g, phi, f)
    if len(plan) > bound:
        raise CrossCheckFailure(f"{len(plan)} transports exceed the bound {bound}")
    return plan


def is_transport_forest(plan: Mapping) -> bool:
    """Whether the undirected graph of plan pairs has no cycle."""
    nodes: dict[str, int] = {}
    for a, b in plan:
        nodes.setdefault(a, len(nodes))
        nodes.setdefault(b, len(nodes))
    dsu = _DSU(len(nodes))
    return all(dsu.union(nodes[a], nodes[b]) for a, b in plan)

