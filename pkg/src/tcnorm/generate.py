"""Seeded random instances: trees, cycles, lollipops and general graphs."""
from __future__ import annotations

import random
from fractions import Fraction

from .errors import BadParams
from .graph import MetricGraph, build_graph
from .vectors import MassFunction

FAMILIES = ("tree", "cycle", "random", "lollipop")


def _names(n: int) -> list[str]:
    return [f"v{i}" for i in range(n)]


def random_length(rng: random.Random, max_den: int = 8, unit: bool = False) -> Fraction:
    if unit:
        return Fraction(1)
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(1, 4 * den), den)


def _edge(rng, u, v, unit):
    # random orientation: it must never matter
    if rng.random() < 0.5:
        u, v = v, u
    return (u, v, random_length(rng, unit=unit))


def random_tree(rng: random.Random, n: int, unit: bool = False) -> MetricGraph:
    names = _names(n)
    edges = [_edge(rng, names[rng.randrange(i)], names[i], unit) for i in range(1, n)]
    return build_graph(names, edges)


def random_cycle(rng: random.Random, n: int, unit: bool = False, shuffle: bool = True) -> MetricGraph:
    if n < 3:
        raise BadParams("a cycle needs at least 3 vertices")
    names = _names(n)
    ring = names[:]
    if shuffle:
        rng.shuffle(ring)
    edges = [_edge(rng, ring[i], ring[(i + 1) % n], unit) for i in range(n)]
    if shuffle:
        rng.shuffle(edges)
    return build_graph(names, edges)


def random_connected(rng: random.Random, n: int, max_edges: int | None = None, unit: bool = False) -> MetricGraph:
    """Random spanning tree plus a random number of extra edges."""
    names = _names(n)
    edges = [_edge(rng, names[rng.randrange(i)], names[i], unit) for i in range(1, n)]
    present = {frozenset(e[:2]) for e in edges}
    missing = [(a, b) for i, a in enumerate(names) for b in names[i + 1:] if frozenset((a, b)) not in present]
    cap = n * (n - 1) // 2 if max_edges is None else max_edges
    extra = rng.randint(0, max(0, min(len(missing), cap - len(edges))))
    for a, b in rng.sample(missing, extra):
        edges.append(_edge(rng, a, b, unit))
    rng.shuffle(edges)
    return build_graph(names, edges)


def lollipop(rng: random.Random, n: int, unit: bool = False) -> MetricGraph:
    """A cycle on about half the vertices with a path hanging off it."""
    if n < 4:
        raise BadParams("a lollipop needs at least 4 vertices")
    names = _names(n)
    c = max(3, n // 2)
    edges = [_edge(rng, names[i], names[(i + 1) % c], unit) for i in range(c)]
    edges += [_edge(rng, names[i - 1] if i > c else names[0], names[i], unit) for i in range(c, n)]
    return build_graph(names, edges)


def random_masses(rng: random.Random, vertices, mass_range: int = 5) -> MassFunction:
    """Uniform integers in ``[-mass_range, mass_range]``; the last vertex balances."""
    vertices = list(vertices)
    values = {v: rng.randint(-mass_range, mass_range) for v in vertices[:-1]}
    values[vertices[-1]] = -sum(values.values())
    return MassFunction(values)


def generate(family: str, n: int, seed: int, mass_range: int = 5) -> tuple[MetricGraph, MassFunction]:
    if n < 2:
        raise BadParams(f"n must be at least 2, got {n}")
    if mass_range < 0:
        raise BadParams("mass range must be nonnegative")
    rng = random.Random(seed)
    if family == "tree":
        g = random_tree(rng, n)
    elif family == "cycle":
        g = random_cycle(rng, n)
    elif family == "random":
        g = random_connected(rng, n, max_edges=2 * n)
    elif family == "lollipop":
        g = lollipop(rng, n)
    else:
        raise BadParams(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    return g, random_masses(rng, g.vertices, mass_range)
