import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcnorm import kernels, minimize_l1_flow
from tcnorm._bellman_py import negative_cycle as py_negative_cycle
from tcnorm.generate import random_connected
from tcnorm.solver import _arc_ends

from conftest import connected_graphs, instances

compiled = pytest.mark.skipif(not kernels.HAVE_COMPILED, reason="compiled kernel not built")


def cycle_cost(costs, tails, heads, cycle):
    # a returned cycle must be closed and strictly negative
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        assert heads[a] == tails[b]
    return sum(costs[a] for a in cycle)


def random_arcs(rng, n, m, lo, hi):
    tails = [rng.randrange(n) for _ in range(m)]
    heads = [rng.randrange(n) for _ in range(m)]
    return tails, heads, [rng.randint(lo, hi) for _ in range(m)]


def test_no_negative_cycle_gives_distances():
    # 0 -> 1 (3), 1 -> 2 (-1), 0 -> 2 (5)
    cycle, dist = py_negative_cycle(3, [0, 1, 0], [1, 2, 2], [3, -1, 5])
    assert cycle is None
    assert list(dist) == [0, 0, -1]


def test_finds_negative_cycle():
    cycle, _ = py_negative_cycle(3, [0, 1, 2], [1, 2, 0], [1, 1, -3])
    assert sorted(cycle) == [0, 1, 2]


@pytest.mark.parametrize("seed", range(40))
def test_python_kernel_is_sound(seed):
    rng = random.Random(seed)
    tails, heads, costs = random_arcs(rng, 6, 12, -3, 9)
    cycle, dist = py_negative_cycle(6, tails, heads, costs)
    if cycle is None:
        for t, h, c in zip(tails, heads, costs):
            assert dist[h] <= dist[t] + c
    else:
        assert cycle_cost(costs, tails, heads, cycle) < 0


@compiled
@pytest.mark.parametrize("seed", range(60))
def test_backends_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 9)
    tails, heads, costs = random_arcs(rng, n, rng.randint(0, 20), -4, 12)
    py = kernels.negative_cycle(n, tails, heads, costs, backend="python")
    cy = kernels.negative_cycle(n, tails, heads, costs, backend="cython")
    assert py[0] == cy[0]
    assert list(py[1]) == list(cy[1])


@compiled
@settings(max_examples=60, deadline=None)
@given(instances(connected_graphs(max_n=8, max_extra=6)))
def test_solver_backends_agree(inst):
    g, f = inst
    a = minimize_l1_flow(g, f, backend="python")
    b = minimize_l1_flow(g, f, backend="cython")
    assert a.flow == b.flow and a.norm == b.norm and a.pivot_count == b.pivot_count


def test_huge_costs_fall_back_to_python():
    tails, heads = [0, 1], [1, 0]
    cycle, dist = kernels.negative_cycle(2, tails, heads, [2**70, -(2**70) - 1])
    assert cycle is not None


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.negative_cycle(1, [], [], [], backend="fortran")


def test_env_var_forces_fallback():
    env = dict(os.environ, TCNORM_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import tcnorm; print(tcnorm.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 30), st.integers(0, 10**6))
def test_arc_ends_pairs(n, seed):
    g = random_connected(random.Random(seed), n)
    tails, heads = _arc_ends(g)
    assert len(tails) == 2 * g.m
    for e in range(g.m):
        assert (tails[2 * e], heads[2 * e]) == (heads[2 * e + 1], tails[2 * e + 1]) == g.ends(e)
