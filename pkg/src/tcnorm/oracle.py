"""Independent ground truth for the solver.

* :func:`oracle_norm_by_trees` minimizes over every spanning tree.
* :func:`dual_certificate` produces a 1-Lipschitz potential whose pairing
  with ``f`` equals the norm (Kantorovich duality), checked exactly.
* :func:`exhaustive_plan_search` enumerates integral plans on tiny supports.
* :func:`metric_space_norm` handles a general finite metric space by solving
  on the complete graph over the support of ``f``.
"""
from __future__ import annotations

import itertools
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .chains import l1_norm
from .errors import CertificateGap, CrossCheckFailure, NonMetric, TooLarge, UnknownVertex, ValidationError
from .graph import DEFAULT_TREE_CAP, DistanceMatrix, MetricGraph, SpanningTree, build_graph, enumerate_spanning_trees
from .plans import _decompose, flow_components, plan_cost
from .solver import initial_tree_flow, minimize_l1_flow, residual_potential
from .vectors import ZERO, TransportPlan, as_mass, to_fraction


def oracle_norm_by_trees(g: MetricGraph, f: Mapping, cap: int = DEFAULT_TREE_CAP) -> tuple[Fraction, SpanningTree]:
    """Minimum over all spanning trees of the norm of the unique tree flow.

    Ties keep the first tree in enumeration order.
    """
    f = as_mass(f, g.index)
    best = None
    for t in enumerate_spanning_trees(g, cap):
        value = l1_norm(g, initial_tree_flow(g, t, f))
        if best is None or value < best[0]:
            best = (value, t)
    return best


@dataclass(frozen=True)
class DualCertificate:
    potential: dict[str, Fraction]
    value: Fraction

    def lipschitz_ok(self, d: DistanceMatrix) -> bool:
        """Exact check of ``|u(x) - u(y)| <= d(x, y)`` over all pairs."""
        pts = list(self.potential)
        return all(
            abs(self.potential[x] - self.potential[y]) <= d[x, y]
            for x, y in itertools.combinations(pts, 2)
        )


def dual_certificate(g: MetricGraph, f: Mapping, claimed_norm=None, backend=None) -> DualCertificate:
    """1-Lipschitz potential certifying the norm of ``f``.

    The potential is minus the shortest-path distance in the residual graph
    of an optimal flow: it drops by exactly ``length(e)`` along every edge
    that carries flow and by at most ``length(e)`` across any other edge.
    It is shifted so the first vertex has potential 0. Raises
    :class:`CertificateGap` when the dual value falls short of
    ``claimed_norm`` (defaults to the solver's norm).
    """
    f = as_mass(f, g.index)
    result = minimize_l1_flow(g, f, backend=backend)
    claimed = result.norm if claimed_norm is None else to_fraction(claimed_norm)
    dist = residual_potential(g, result.flow, backend=backend)
    base = dist[g.vertices[0]]
    potential = {v: base - dist[v] for v in g.vertices}
    value = sum((f[v] * potential[v] for v in f), ZERO)
    cert = DualCertificate(potential, value)
    if not cert.lipschitz_ok(g.distance):
        raise CrossCheckFailure("constructed potential is not 1-Lipschitz")
    if value < claimed:
        raise CertificateGap(value, claimed)
    if value > claimed:
        raise CrossCheckFailure(f"dual value {value} exceeds the claimed norm {claimed}")
    return cert


@dataclass(frozen=True)
class FiniteMetricSpace:
    points: tuple[str, ...]
    distance: DistanceMatrix


def metric_space(points: Sequence[str], matrix: Sequence[Sequence]) -> FiniteMetricSpace:
    """Validate a distance matrix (exactly) and wrap it."""
    points = tuple(str(p) for p in points)
    n = len(points)
    if len(set(points)) != n:
        raise ValidationError("duplicate point names")
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise NonMetric(f"distance matrix must be {n}x{n}")
    d = [[to_fraction(x) for x in row] for row in matrix]
    for i in range(n):
        if d[i][i] != 0:
            raise NonMetric(f"d({points[i]}, {points[i]}) = {d[i][i]}")
        for j in range(n):
            if d[i][j] != d[j][i]:
                raise NonMetric(f"d is not symmetric at ({points[i]}, {points[j]})")
            if i != j and d[i][j] <= 0:
                raise NonMetric(f"d({points[i]}, {points[j]}) is not positive")
    for i, j, k in itertools.product(range(n), repeat=3):
        if d[i][k] > d[i][j] + d[j][k]:
            raise NonMetric(f"triangle inequality fails for ({points[i]}, {points[j]}, {points[k]})")
    table = {(points[i], points[j]): d[i][j] for i in range(n) for j in range(n)}
    return FiniteMetricSpace(points, DistanceMatrix(points, table))


def _check_points(space: FiniteMetricSpace, f):
    f = as_mass(f)
    for v in f:
        if v not in space.points:
            raise UnknownVertex(f"mass given on unknown point {v!r}")
    return f


def exhaustive_plan_search(space: FiniteMetricSpace, f: Mapping, grid_denominator: int = 1) -> Fraction:
    """Minimum cost over all source-to-sink plans with entries in ``(1/D) Z``.

    Only for supports of at most four points.
    """
    f = _check_points(space, f)
    if len(f) > 4:
        raise TooLarge(f"support has {len(f)} points; the search handles at most 4")
    D = int(grid_denominator)
    if D < 1:
        raise ValidationError("grid denominator must be positive")
    scaled = {v: f[v] * D for v in f}
    if any(x.denominator != 1 for x in scaled.values()):
        raise ValidationError(f"masses are not multiples of 1/{D}")
    sources = sorted(v for v in f if f[v] > 0)
    sinks = sorted(v for v in f if f[v] < 0)
    demand0 = [int(-scaled[b]) for b in sinks]
    d = space.distance
    best = None

    def fill(i: int, demand: list[int], cost: Fraction):
        nonlocal best
        if i == len(sources):
            if not any(demand) and (best is None or cost < best):
                best = cost
            return
        a = sources[i]
        for row in _splits(int(scaled[a]), demand):
            fill(i + 1, [r - x for r, x in zip(demand, row)], cost + sum((x * d[a, b] for x, b in zip(row, sinks)), ZERO))

    fill(0, demand0, ZERO)
    return (best if best is not None else ZERO) / D


def _splits(total: int, caps: list[int]):
    """All ways to write ``total`` as a sum of nonnegative ints bounded by ``caps``."""
    if not caps:
        if total == 0:
            yield []
        return
    for x in range(min(total, caps[0]) + 1):
        for rest in _splits(total - x, caps[1:]):
            yield [x] + rest


def support_graph(space: FiniteMetricSpace, f: Mapping) -> MetricGraph:
    """Complete graph on ``supp f`` with edge lengths taken from the metric."""
    pts = [p for p in space.points if p in f]
    edges = [(a, b, space.distance[a, b]) for a, b in itertools.combinations(pts, 2)]
    return build_graph(pts, edges)


def metric_space_norm(space: FiniteMetricSpace, f: Mapping) -> tuple[Fraction, TransportPlan]:
    """Norm and an optimal source-to-sink plan with at most ``|supp f| - 1`` transports."""
    f = _check_points(space, f)
    if not f:
        return ZERO, TransportPlan()
    g = support_graph(space, f)
    result = minimize_l1_flow(g, f)
    plan = _decompose(g, result.flow, f)
    bound = len(f) - flow_components(g, result.flow, f)
    if len(plan) > bound:
        raise CrossCheckFailure(f"{len(plan)} transports exceed the bound {bound}")
    if plan_cost(space.distance, plan) != result.norm:
        raise CrossCheckFailure("plan cost differs from the flow norm")
    return result.norm, plan


def lcm_denominator(values) -> int:
    return math.lcm(*(to_fraction(v).denominator for v in values)) if values else 1
