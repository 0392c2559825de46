"""JSON formats for graphs, masses, metric spaces, plans and certificates.

Graph:   {"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "len": "3/2"}]}
Masses:  {"a": "1", "b": "-1"}
Space:   {"points": ["a", "b"], "d": [["0", "1"], ["1", "0"]]}
Instance files combine them: {"graph": ..., "masses": ...} or
{"space": ..., "masses": ...}. Rationals are written as "p/q" or "p".
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal
from pathlib import Path

from .errors import UnknownVertex, ValidationError
from .graph import MetricGraph, build_graph
from .oracle import DualCertificate, FiniteMetricSpace, metric_space
from .vectors import MassFunction, TransportPlan, format_rational


@dataclass(frozen=True)
class Instance:
    masses: MassFunction
    graph: MetricGraph | None = None
    space: FiniteMetricSpace | None = None


def _loads(text: str):
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from exc


def graph_from_json(obj) -> MetricGraph:
    try:
        vertices = obj["vertices"]
        edges = [(e["u"], e["v"], e["len"]) for e in obj["edges"]]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed graph: missing {exc}") from exc
    return build_graph(vertices, edges)


def graph_to_json(g: MetricGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"u": e.tail, "v": e.head, "len": format_rational(e.length)} for e in g.edges],
    }


def masses_from_json(obj) -> MassFunction:
    if not isinstance(obj, dict):
        raise ValidationError("masses must be a JSON object")
    return MassFunction(obj)


def masses_to_json(f, vertices=None) -> dict:
    keys = vertices if vertices is not None else sorted(f)
    return {v: format_rational(f[v]) for v in keys}


def space_from_json(obj) -> FiniteMetricSpace:
    try:
        return metric_space(obj["points"], obj["d"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed metric space: missing {exc}") from exc


def space_to_json(space: FiniteMetricSpace) -> dict:
    d = space.distance
    return {"points": list(space.points), "d": [[format_rational(x) for x in row] for row in d.as_rows()]}


def plan_to_json(plan: TransportPlan) -> list[dict]:
    return [{"from": a, "to": b, "mass": format_rational(m)} for (a, b), m in sorted(plan.items())]


def plan_from_json(obj) -> TransportPlan:
    return TransportPlan({(row["from"], row["to"]): row["mass"] for row in obj})


def certificate_to_json(cert: DualCertificate, lipschitz_ok: bool, vertices) -> dict:
    return {
        "value": format_rational(cert.value),
        "potential": {v: format_rational(cert.potential[v]) for v in vertices},
        "lipschitz_ok": lipschitz_ok,
    }


def instance_to_json(inst: Instance) -> dict:
    out = {}
    if inst.graph is not None:
        out["graph"] = graph_to_json(inst.graph)
        out["masses"] = masses_to_json(inst.masses, inst.graph.vertices)
    else:
        out["space"] = space_to_json(inst.space)
        out["masses"] = masses_to_json(inst.masses, inst.space.points)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def load_instance(path, masses_path=None) -> Instance:
    """Read an instance file, or a bare graph/space file plus a masses file."""
    obj = _loads(Path(path).read_text())
    if not isinstance(obj, dict):
        raise ValidationError("instance must be a JSON object")
    if masses_path is not None:
        masses = masses_from_json(_loads(Path(masses_path).read_text()))
    elif "masses" in obj:
        masses = masses_from_json(obj["masses"])
    else:
        raise ValidationError("no masses given (add a \"masses\" key or pass --masses)")
    if "graph" in obj:
        inst = Instance(masses, graph=graph_from_json(obj["graph"]))
    elif "space" in obj:
        inst = Instance(masses, space=space_from_json(obj["space"]))
    elif "vertices" in obj:
        inst = Instance(masses, graph=graph_from_json(obj))
    elif "points" in obj:
        inst = Instance(masses, space=space_from_json(obj))
    else:
        raise ValidationError("instance has neither a graph nor a metric space")
    known = inst.graph.index if inst.graph is not None else set(inst.space.points)
    for v in masses:
        if v not in known:
            raise UnknownVertex(f"mass given on unknown vertex {v!r}")
    return inst
