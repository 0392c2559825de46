"""Metric graphs: construction, shortest paths, bridges, spanning trees, cycles.

Vertices are opaque strings. Edges are indexed densely in input order and
keep the orientation they were given with (tail = first endpoint listed).
Every ordering tie in this module is broken by vertex identifier (string
order) or by edge index, so all results are reproducible.
"""
from __future__ import annotations

import heapq
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from .errors import (
    Disconnected,
    DuplicateEdge,
    LoopEdge,
    NotACycle,
    NonpositiveLength,
    NotSpanning,
    TooManyTrees,
    UnknownVertex,
    ValidationError,
)
from .vectors import ZERO, CycleVector, to_fraction

DEFAULT_TREE_CAP = 10**6


class Edge(NamedTuple):
    tail: str
    head: str
    length: Fraction


@dataclass(frozen=True, eq=False)
class MetricGraph:
    """Simple connected graph with positive rational edge lengths.

    Build instances with :func:`build_graph`; the constructor trusts its input.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    index: dict[str, int] = field(repr=False)
    # adjacency[i] lists (edge index, neighbour vertex index) in edge order
    adjacency: tuple[tuple[tuple[int, int], ...], ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_between(self, u: str, v: str) -> int | None:
        return self._pair_index.get(frozenset((u, v)))

    def ends(self, e: int) -> tuple[int, int]:
        edge = self.edges[e]
        return self.index[edge.tail], self.index[edge.head]

    @cached_property
    def _pair_index(self) -> dict[frozenset, int]:
        return {frozenset((e.tail, e.head)): i for i, e in enumerate(self.edges)}

    @cached_property
    def distance(self) -> DistanceMatrix:
        return shortest_path_metric(self)

    def is_tree(self) -> bool:
        return self.m == self.n - 1

    def is_cycle(self) -> bool:
        return self.n >= 3 and self.m == self.n and all(len(a) == 2 for a in self.adjacency)

    def subgraph(self, edge_ids: Iterable[int], vertices: Iterable[str] | None = None) -> MetricGraph:
        """Graph on the given edges (orientation and lengths kept)."""
        edge_ids = sorted(edge_ids)
        if vertices is None:
            keep = {v for e in edge_ids for v in self.edges[e][:2]}
            vertices = [v for v in self.vertices if v in keep]
        return build_graph(list(vertices), [self.edges[e] for e in edge_ids])

    def scaled(self, factor) -> MetricGraph:
        factor = to_fraction(factor)
        return build_graph(self.vertices, [(e.tail, e.head, e.length * factor) for e in self.edges])


def build_graph(vertex_list: Sequence[str], edge_list: Iterable[Sequence]) -> MetricGraph:
    """Validate and build a :class:`MetricGraph`.

    ``edge_list`` holds ``(tail, head, length)`` triples; lengths may be any
    exact rational input accepted by :func:`~tcnorm.vectors.to_fraction`.
    """
    vertices = tuple(str(v) for v in vertex_list)
    index: dict[str, int] = {}
    for v in vertices:
        if v in index:
            raise ValidationError(f"vertex {v!r} declared twice")
        index[v] = len(index)
    if not vertices:
        raise ValidationError("graph has no vertices")

    edges: list[Edge] = []
    seen: dict[frozenset, int] = {}
    adjacency: list[list[tuple[int, int]]] = [[] for _ in vertices]
    for raw in edge_list:
        u, v, length = raw
        u, v = str(u), str(v)
        for x in (u, v):
            if x not in index:
                raise UnknownVertex(f"edge ({u}, {v}) uses undeclared vertex {x!r}")
        if u == v:
            raise LoopEdge(f"loop edge at vertex {u!r}")
        pair = frozenset((u, v))
        if pair in seen:
            raise DuplicateEdge(f"edge ({u}, {v}) duplicates edge #{seen[pair]}")
        length = to_fraction(length)
        if length <= 0:
            raise NonpositiveLength(f"edge ({u}, {v}) has length {length}")
        eid = len(edges)
        seen[pair] = eid
        edges.append(Edge(u, v, length))
        adjacency[index[u]].append((eid, index[v]))
        adjacency[index[v]].append((eid, index[u]))

    reached = _reach(adjacency, 0, ())
    if len(reached) != len(vertices):
        missing = next(v for v in vertices if index[v] not in reached)
        raise Disconnected(f"vertex {missing!r} is not connected to {vertices[0]!r}")

    return MetricGraph(vertices, tuple(edges), index, tuple(tuple(a) for a in adjacency))


def _reach(adjacency, start: int, removed: Iterable[int]) -> set[int]:
    removed = set(removed)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for e, y in adjacency[x]:
            if e not in removed and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


class DistanceMatrix:
    """Exact all-pairs distances, indexed as ``d[a, b]``.

    When built from a graph, :meth:`path` returns the selected shortest path
    between two vertices: the lexicographically smallest vertex sequence
    (by identifier) among all shortest paths.
    """

    def __init__(self, points: Sequence[str], table: dict[tuple[str, str], Fraction], graph: MetricGraph | None = None):
        self.points = tuple(points)
        self._d = table
        self.graph = graph
        self._paths: dict[tuple[str, str], tuple[str, ...]] = {}

    def __getitem__(self, pair: tuple[str, str]) -> Fraction:
        a, b = pair
        if a == b:
            return ZERO
        return self._d[a, b]

    def path(self, a: str, b: str) -> tuple[str, ...]:
        if self.graph is None:
            raise TypeError("paths are only available for graph metrics")
        key = (a, b)
        if key not in self._paths:
            self._paths[key] = self._select_path(a, b)
        return self._paths[key]

    def _select_path(self, a: str, b: str) -> tuple[str, ...]:
        g = self.graph
        seq = [a]
        x = a
        while x != b:
            # the smallest-identifier neighbour that stays on a shortest path
            best = None
            for e, j in g.adjacency[g.index[x]]:
                y = g.vertices[j]
                if g.edges[e].length + self[y, b] == self[x, b] and (best is None or y < best):
                    best = y
            seq.append(best)
            x = best
        return tuple(seq)

    def as_rows(self) -> list[list[Fraction]]:
        return [[self[a, b] for b in self.points] for a in self.points]


def shortest_path_metric(g: MetricGraph) -> DistanceMatrix:
    """All-pairs shortest path lengths (Dijkstra from every vertex)."""
    table: dict[tuple[str, str], Fraction] = {}
    for s in range(g.n):
        dist: list[Fraction | None] = [None] * g.n
        dist[s] = ZERO
        heap = [(ZERO, s)]
        done = [False] * g.n
        while heap:
            dx, x = heapq.heappop(heap)
            if done[x]:
                continue
            done[x] = True
            for e, y in g.adjacency[x]:
                nd = dx + g.edges[e].length
                if dist[y] is None or nd < dist[y]:
                    dist[y] = nd
                    heapq.heappush(heap, (nd, y))
        src = g.vertices[s]
        for t in range(g.n):
            table[src, g.vertices[t]] = dist[t]
    return DistanceMatrix(g.vertices, table, g)


def find_bridges(g: MetricGraph) -> frozenset[int]:
    """Indices of edges whose deletion disconnects ``g`` (iterative low-link)."""
    disc = [-1] * g.n
    low = [0] * g.n
    bridges = set()
    clock = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(g.adjacency[root]))]
        while stack:
            x, via, it = stack[-1]
            for e, y in it:
                if e == via:
                    continue
                if disc[y] == -1:
                    disc[y] = low[y] = clock
                    clock += 1
                    stack.append((y, e, iter(g.adjacency[y])))
                    break
                low[x] = min(low[x], disc[y])
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[x])
                    if low[x] > disc[parent]:
                        bridges.add(via)
    return frozenset(bridges)


def side_of(g: MetricGraph, e: int, edges: Iterable[int] | None = None) -> frozenset[str]:
    """Vertices reachable from the head of ``e`` without crossing ``e``.

    With ``edges`` given, only those edges are walked (e.g. a spanning tree).
    For a bridge or a tree edge this is the half-tree containing the head.
    """
    allowed = None if edges is None else set(edges)
    start = g.index[g.edges[e].head]
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for f, y in g.adjacency[x]:
            if f == e or (allowed is not None and f not in allowed):
                continue
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(g.vertices[i] for i in seen)


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass(frozen=True, eq=False)
class SpanningTree:
    graph: MetricGraph
    edges: frozenset[int]

    def __post_init__(self):
        g = self.graph
        if len(self.edges) != g.n - 1 or any(not 0 <= e < g.m for e in self.edges):
            raise NotSpanning(f"{len(self.edges)} edges cannot span {g.n} vertices")
        dsu = _DSU(g.n)
        for e in self.edges:
            if not dsu.union(*g.ends(e)):
                raise NotSpanning(f"edge #{e} closes a cycle")

    def __eq__(self, other):
        return isinstance(other, SpanningTree) and other.graph is self.graph and other.edges == self.edges

    def __hash__(self):
        return hash(self.edges)

    @property
    def non_tree_edges(self) -> list[int]:
        return [e for e in range(self.graph.m) if e not in self.edges]

    @cached_property
    def _rooted(self):
        """Parent edge and BFS order of the tree rooted at the first vertex."""
        g = self.graph
        parent_edge = [-1] * g.n
        depth = [0] * g.n
        order = [0]
        seen = {0}
        q = deque([0])
        while q:
            x = q.popleft()
            for e, y in g.adjacency[x]:
                if e in self.edges and y not in seen:
                    seen.add(y)
                    parent_edge[y] = e
                    depth[y] = depth[x] + 1
                    order.append(y)
                    q.append(y)
        return parent_edge, depth, order

    def tree_path(self, u: int, v: int) -> list[tuple[int, int]]:
        """Edges on the tree path from vertex index ``u`` to ``v``.

        Each item is ``(edge, sign)`` with sign +1 when the path walks the edge
        from tail to head.
        """
        g = self.graph
        parent_edge, depth, _ = self._rooted

        def up(x):
            e = parent_edge[x]
            a, b = g.ends(e)
            return e, (a if b == x else b)

        front, back = [], []
        while u != v:
            if depth[u] >= depth[v]:
                e, p = up(u)
                front.append((e, 1 if g.index[g.edges[e].tail] == u else -1))
                u = p
            else:
                e, p = up(v)
                back.append((e, 1 if g.index[g.edges[e].head] == v else -1))
                v = p
        return front + back[::-1]

    @cached_property
    def cycles(self) -> list[CycleVector]:
        return fundamental_cycles(self.graph, self)


def fundamental_cycles(g: MetricGraph, t: SpanningTree) -> list[CycleVector]:
    """One cycle vector per non-tree edge, +1 on that edge."""
    if t.graph is not g:
        raise NotSpanning("tree belongs to a different graph")
    out = []
    for e in t.non_tree_edges:
        u, v = g.ends(e)
        values = {e: 1}
        # close the cycle: walk back from the head to the tail through the tree
        for f, sign in t.tree_path(v, u):
            values[f] = sign
        out.append(CycleVector(values))
    return out


def bfs_tree(g: MetricGraph) -> SpanningTree:
    """Breadth-first spanning tree from the first vertex, edges in index order."""
    seen = {0}
    chosen = set()
    q = deque([0])
    while q:
        x = q.popleft()
        for e, y in g.adjacency[x]:
            if y not in seen:
                seen.add(y)
                chosen.add(e)
                q.append(y)
    return SpanningTree(g, frozenset(chosen))


def complete_forest(g: MetricGraph, forest: Iterable[int]) -> SpanningTree:
    """Extend an acyclic edge set to a spanning tree, adding edges by index."""
    dsu = _DSU(g.n)
    chosen = set()
    for e in sorted(forest):
        if not dsu.union(*g.ends(e)):
            raise NotSpanning(f"edge set is not acyclic (edge #{e})")
        chosen.add(e)
    for e in range(g.m):
        if e not in chosen and dsu.union(*g.ends(e)):
            chosen.add(e)
    return SpanningTree(g, frozenset(chosen))


def count_spanning_trees(g: MetricGraph) -> int:
    """Kirchhoff's matrix-tree count via an exact (Bareiss) determinant."""
    n = g.n
    if n == 1:
        return 1
    lap = [[0] * n for _ in range(n)]
    for e in range(g.m):
        a, b = g.ends(e)
        lap[a][a] += 1
        lap[b][b] += 1
        lap[a][b] -= 1
        lap[b][a] -= 1
    mat = [row[1:] for row in lap[1:]]
    size = n - 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if mat[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if mat[r][k]), None)
            if swap is None:
                return 0
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
        prev = mat[k][k]
    return sign * mat[size - 1][size - 1]


def enumerate_spanning_trees(g: MetricGraph, cap: int = DEFAULT_TREE_CAP) -> Iterator[SpanningTree]:
    """Yield every spanning tree once, by include/exclude branching on edges.

    A branch is only entered when it can still be completed: including an
    edge must not close a cycle, excluding it must leave the graph connected.
    Trees come out in lexicographic order of their inclusion pattern.
    """
    count = count_spanning_trees(g)
    if count > cap:
        raise TooManyTrees(count, cap)
    n, m = g.n, g.m
    ends = [g.ends(e) for e in range(m)]

    def connected_without(chosen: list[int], start: int) -> bool:
        dsu = _DSU(n)
        comps = n
        for e in chosen:
            comps -= dsu.union(*ends[e])
        for e in range(start, m):
            comps -= dsu.union(*ends[e])
        return comps == 1

    def acyclic_with(chosen: list[int], e: int) -> bool:
        dsu = _DSU(n)
        for f in chosen:
            dsu.union(*ends[f])
        return dsu.union(*ends[e])

    def rec(i: int, chosen: list[int]) -> Iterator[SpanningTree]:
        if len(chosen) == n - 1:
            yield SpanningTree(g, frozenset(chosen))
            return
        if i == m:
            return
        if acyclic_with(chosen, i):
            chosen.append(i)
            yield from rec(i + 1, chosen)
            chosen.pop()
        if connected_without(chosen, i + 1):
            yield from rec(i + 1, chosen)

    yield from rec(0, [])


def cycle_order(g: MetricGraph) -> tuple[list[str], list[int]]:
    """Walk a cycle graph: vertices v_0..v_{N-1} and edges e_i = {v_i, v_{i-1}}.

    v_0 is the first declared vertex; v_1 is reached through the lowest-index
    edge at v_0.
    """
    if not g.is_cycle():
        raise NotACycle("graph is not a single cycle")
    verts = [0]
    edges = []
    prev_edge = None
    x = 0
    for _ in range(g.n):
        e, y = next((e, y) for e, y in g.adjacency[x] if e != prev_edge)
        edges.append(e)
        prev_edge = e
        x = y
        verts.append(y)
    if verts[-1] != 0:
        raise NotACycle("graph is not a single cycle")
    names = [g.vertices[i] for i in verts[:-1]]
    # edges[i] joins v_i and v_{i+1}; rotate so position i joins v_i and v_{i-1}
    return names, [edges[-1]] + edges[:-1]
