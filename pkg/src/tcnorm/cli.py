"""Command-line interface: ``tcnorm {norm,plan,certify,gen,bench}``.

Exit codes: 0 success, 2 invalid input, 3 internal cross-check failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from fractions import Fraction

from . import io
from .closed_forms import AdditionCounter, bridge_norm, cycle_norm, tree_norm, tree_norm_leaf_peel
from .errors import CrossCheckFailure, ValidationError
from .generate import FAMILIES, generate
from .graph import count_spanning_trees
from .oracle import dual_certificate, exhaustive_plan_search, metric_space_norm, oracle_norm_by_trees
from .plans import min_transport_plan_tree, optimal_simultaneous_plan
from .solver import minimize_l1_flow
from .vectors import format_rational

ALGOS = ("auto", "solver", "tree", "cycle", "bridge", "oracle")
BENCH_HEADER = ["instance", "algo", "vertices", "edges", "norm", "micros", "counter"]


def _norm(inst: io.Instance, algo: str) -> Fraction:
    f = inst.masses
    if inst.space is not None:
        if algo in ("auto", "solver"):
            return metric_space_norm(inst.space, f)[0]
        if algo == "oracle":
            return exhaustive_plan_search(inst.space, f, _denominator(f))
        raise ValidationError(f"--algo {algo} needs a graph instance")
    g = inst.graph
    if algo == "auto":
        algo = "tree" if g.is_tree() else "cycle" if g.is_cycle() else "bridge"
    if algo == "solver":
        return minimize_l1_flow(g, f).norm
    if algo == "tree":
        return tree_norm_leaf_peel(g, f)
    if algo == "cycle":
        return cycle_norm(g, f)
    if algo == "bridge":
        return bridge_norm(g, f)
    return oracle_norm_by_trees(g, f)[0]


def _denominator(f) -> int:
    return math.lcm(*(v.denominator for v in f.values())) if f else 1


def cmd_norm(args) -> int:
    inst = io.load_instance(args.instance, args.masses)
    print(format_rational(_norm(inst, args.algo)))
    return 0


def cmd_plan(args) -> int:
    inst = io.load_instance(args.instance, args.masses)
    if inst.space is not None:
        plan = metric_space_norm(inst.space, inst.masses)[1]
    elif args.min_transports and inst.graph.is_tree():
        plan = min_transport_plan_tree(inst.graph, inst.masses)
    else:
        plan = optimal_simultaneous_plan(inst.graph, inst.masses)
    sys.stdout.write(json.dumps(io.plan_to_json(plan)) + "\n")
    return 0


def cmd_certify(args) -> int:
    inst = io.load_instance(args.instance, args.masses)
    if inst.graph is None:
        raise ValidationError("certify needs a graph instance")
    g = inst.graph
    cert = dual_certificate(g, inst.masses)
    ok = cert.lipschitz_ok(g.distance)
    sys.stdout.write(io.dumps(io.certificate_to_json(cert, ok, g.vertices)))
    return 0 if ok else 3


def cmd_gen(args) -> int:
    g, f = generate(args.family, args.n, args.seed, args.mass_range)
    text = io.dumps(io.instance_to_json(io.Instance(f, graph=g)))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, int((time.perf_counter() - start) * 1e6)


def bench_rows(families, sizes, seeds, mass_range=5, oracle_cap=2000):
    """One row per (instance, algorithm); raises if any two norms disagree."""
    for family in families:
        for n in sizes:
            for seed in seeds:
                g, f = generate(family, n, seed, mass_range)
                name = f"{family}-n{n}-s{seed}"
                rows = []

                def add(algo, fn, counter=None):
                    value, micros = _timed(fn)
                    if isinstance(value, tuple):
                        value, counter = value
                    rows.append([name, algo, g.n, g.m, format_rational(value), micros, "" if counter is None else counter])

                def solver():
                    r = minimize_l1_flow(g, f)
                    return r.norm, r.pivot_count

                add("solver", solver)
                add("bridge", lambda: bridge_norm(g, f))
                if g.is_tree():
                    def naive():
                        c = AdditionCounter()
                        return tree_norm(g, f, c), c.additions

                    def peel():
                        c = AdditionCounter()
                        return tree_norm_leaf_peel(g, f, c), c.additions

                    add("tree", naive)
                    add("tree-peel", peel)
                if g.is_cycle():
                    add("cycle", lambda: cycle_norm(g, f))
                trees = count_spanning_trees(g)
                if trees <= oracle_cap:
                    add("oracle", lambda: oracle_norm_by_trees(g, f)[0], trees)
                if len({r[4] for r in rows}) != 1:
                    raise CrossCheckFailure(f"algorithms disagree on {name}: {[(r[1], r[4]) for r in rows]}")
                yield from rows


def cmd_bench(args) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    for row in bench_rows(args.families, args.sizes, args.seeds, args.mass_range, args.oracle_cap):
        writer.writerow(row)
    return 0


def _csv_list(cast):
    def parse(text: str):
        return [cast(x) for x in text.split(",") if x.strip()]

    return parse


def _family_list(text: str):
    fams = _csv_list(str)(text)
    for fam in fams:
        if fam not in FAMILIES:
            raise argparse.ArgumentTypeError(f"unknown family {fam!r}")
    return fams


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tcnorm", description="Exact transportation cost norms on metric graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def instance_args(sp):
        sp.add_argument("instance", help="instance JSON (graph or space, optionally with masses)")
        sp.add_argument("--masses", help="separate masses JSON file")

    sp = sub.add_parser("norm", help="print the exact norm")
    instance_args(sp)
    sp.add_argument("--algo", choices=ALGOS, default="auto")
    sp.set_defaults(func=cmd_norm)

    sp = sub.add_parser("plan", help="print an optimal source-to-sink plan as JSON")
    instance_args(sp)
    sp.add_argument("--min-transports", action="store_true", help="use the minimal-transport construction on trees")
    sp.set_defaults(func=cmd_plan)

    sp = sub.add_parser("certify", help="print a dual certificate as JSON")
    instance_args(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("gen", help="generate a random instance")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mass-range", type=int, default=5)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="compare algorithms on generated instances (CSV)")
    sp.add_argument("--families", type=_family_list, default=list(FAMILIES))
    sp.add_argument("--sizes", type=_csv_list(int), default=[10])
    sp.add_argument("--seeds", type=_csv_list(int), default=[0])
    sp.add_argument("--mass-range", type=int, default=5)
    sp.add_argument("--oracle-cap", type=int, default=2000, help="skip the tree oracle above this many spanning trees")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    except OSError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    except CrossCheckFailure as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
