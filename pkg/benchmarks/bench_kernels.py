"""Compare the compiled and pure-Python negative-cycle kernels.

Two measurements per graph size:

* ``kernel``: one Bellman-Ford search on a residual graph whose costs are
  shifted by a random potential, so many arcs are negative but no cycle is
  (the search has to run to convergence);
* ``solve``: a full ``minimize_l1_flow`` on a random instance.

Usage: python benchmarks/bench_kernels.py --sizes 50,100,200 --repeat 3
"""
import argparse
import random
import sys
import time

from tcnorm import kernels
from tcnorm.generate import random_connected, random_masses
from tcnorm.solver import _arc_costs, _arc_ends, _scale, minimize_l1_flow


def best_of(repeat, fn):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default="50,100,200")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    if not kernels.HAVE_COMPILED:
        print("compiled kernel not built; only the Python backend is available", file=sys.stderr)
    backends = ["python"] + (["cython"] if kernels.HAVE_COMPILED else [])

    print("size,edges,task,backend,seconds,speedup")
    for n in (int(x) for x in args.sizes.split(",")):
        rng = random.Random(args.seed + n)
        g = random_connected(rng, n, max_edges=3 * n)
        f = random_masses(rng, g.vertices)
        tails, heads = _arc_ends(g)
        pot = [rng.randint(-10**6, 10**6) for _ in range(g.n)]
        costs = [c + pot[t] - pot[h] for c, t, h in zip(_arc_costs(g, {}, _scale(g)), tails, heads)]
        tasks = {
            "kernel": lambda b: kernels.negative_cycle(g.n, tails, heads, costs, backend=b),
            "solve": lambda b: minimize_l1_flow(g, f, backend=b),
        }
        for task, fn in tasks.items():
            base = None
            results = {}
            for b in backends:
                secs = best_of(args.repeat, lambda: fn(b))
                base = base or secs
                results[b] = fn(b)
                print(f"{n},{g.m},{task},{b},{secs:.6f},{base / secs:.2f}")
            if task == "solve" and len({r.norm for r in results.values()}) != 1:
                raise SystemExit("backends disagree on the norm")


if __name__ == "__main__":
    main()
