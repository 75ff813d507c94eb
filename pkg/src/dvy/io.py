"""JSON formats.  Numbers may be ints, decimal strings or ``"p/q"``; decimals parse exactly."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .core import FiniteDiversity, FiniteMetric, GroundSet, PointSet, fmt_rat, to_rat
from .errors import InputError
from .phylo import WeightedTree
from .steiner import MetricInstance
from .tightspan import Constraint, SpanFunction


def read_json(src) -> Any:
    """Parse a path, JSON text or already-decoded object; floats become Fractions."""
    if isinstance(src, (dict, list)):
        return src
    text = Path(src).read_text(encoding="utf-8") if not str(src).lstrip().startswith(("{", "[")) else str(src)
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as e:
        raise InputError(f"{src}: invalid JSON ({e})") from None


def jsonable(obj):
    if isinstance(obj, Fraction):
        return fmt_rat(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "as_dict"):
        return jsonable(obj.as_dict())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(jsonable(obj), indent=2, ensure_ascii=False)
    return json.dumps(jsonable(obj), separators=(",", ":"), ensure_ascii=False)


def _need(doc, *keys):
    if not isinstance(doc, dict):
        raise InputError("expected a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise InputError(f"missing field(s): {', '.join(missing)}")


def _table(doc, key="values") -> dict:
    out = {}
    if not isinstance(doc[key], list):
        raise InputError(f"'{key}' must be a list of {{set, value}} entries")
    for item in doc[key]:
        if not isinstance(item, dict) or "set" not in item or "value" not in item:
            raise InputError(f"each entry in '{key}' needs 'set' and 'value'")
        names = tuple(str(x) for x in item["set"])
        fs = frozenset(names)
        if fs in out:
            raise InputError(f"set {sorted(fs)} listed twice")
        out[fs] = (names, item["value"])
    return dict(out.values())


# ---------------------------------------------------------------------------
# readers


def load_diversity(src) -> FiniteDiversity:
    doc = read_json(src)
    _need(doc, "elements", "values")
    return FiniteDiversity.from_sets([str(x) for x in doc["elements"]], _table(doc))


def load_function(src, elements=None) -> SpanFunction:
    """Span function: ``values`` (or ``function``) for every nonempty subset, or a ``constant``."""
    doc = read_json(src)
    if not isinstance(doc, dict):
        raise InputError("expected a JSON object")
    els = doc.get("elements", elements)
    if els is None:
        raise InputError("function needs 'elements'")
    els = [str(x) for x in els]
    if "constant" in doc:
        return SpanFunction.constant(GroundSet(els), to_rat(doc["constant"]))
    key = "function" if "function" in doc else "values"
    _need(doc, key)
    return SpanFunction.from_sets(els, _table(doc, key))


def load_family(src, elements=None) -> list[SpanFunction]:
    doc = read_json(src)
    items = doc.get("functions") if isinstance(doc, dict) else doc
    if not isinstance(items, list) or not items:
        raise InputError("expected a nonempty list of functions")
    els = doc.get("elements", elements) if isinstance(doc, dict) else elements
    return [load_function(f, els) for f in items]


def load_constraints(src, elements=None) -> list[Constraint]:
    doc = read_json(src)
    items = doc.get("constraints") if isinstance(doc, dict) else doc
    if not isinstance(items, list) or not items:
        raise InputError("expected a nonempty list of constraints")
    els = doc.get("elements", elements) if isinstance(doc, dict) else elements
    out = []
    for c in items:
        _need(c, "family", "radius")
        out.append(Constraint(tuple(load_function(f, els) for f in c["family"]), to_rat(c["radius"])))
    return out


def load_metric(src) -> FiniteMetric:
    doc = read_json(src)
    _need(doc, "elements", "matrix")
    g = GroundSet([str(x) for x in doc["elements"]])
    rows = doc["matrix"]
    if len(rows) != g.n or any(len(r) != g.n for r in rows):
        raise InputError("matrix must be n x n")
    return FiniteMetric(g, tuple(tuple(to_rat(x) for x in r) for r in rows))


def load_points(src) -> PointSet:
    doc = read_json(src)
    _need(doc, "elements", "coords")
    g = GroundSet([str(x) for x in doc["elements"]])
    if len(doc["coords"]) != g.n:
        raise InputError("one coordinate vector per element required")
    return PointSet(g, tuple(tuple(to_rat(x) for x in p) for p in doc["coords"]))


def _edges(doc):
    out = []
    for e in doc["edges"]:
        if not isinstance(e, list) or len(e) != 3:
            raise InputError("edges are [u, v, weight] triples")
        out.append((str(e[0]), str(e[1]), to_rat(e[2])))
    return tuple(out)


def load_tree(src) -> WeightedTree:
    doc = read_json(src)
    _need(doc, "nodes", "edges")
    nodes = tuple(str(x) for x in doc["nodes"])
    return WeightedTree(nodes, _edges(doc), tuple(str(x) for x in doc.get("leaves", ())))


def load_graph(src) -> MetricInstance:
    doc = read_json(src)
    _need(doc, "nodes", "edges")
    nodes = tuple(str(x) for x in doc["nodes"])
    return MetricInstance(nodes, _edges(doc), tuple(str(x) for x in doc.get("terminals", nodes)))


def load_instance(src) -> MetricInstance:
    """Graph JSON, or a metric JSON read as a complete graph on its elements."""
    doc = read_json(src)
    if isinstance(doc, dict) and "matrix" in doc:
        return MetricInstance.from_metric(load_metric(doc))
    return load_graph(doc)


# ---------------------------------------------------------------------------
# writers


def diversity_doc(d: FiniteDiversity) -> dict:
    g = d.ground
    return {"elements": list(g.labels),
            "values": [{"set": g.names(A), "value": d.values[A]} for A in range(1, 1 << g.n) if A & (A - 1)]}


def function_doc(f: SpanFunction) -> dict:
    g = f.ground
    return {"elements": list(g.labels), "values": [{"set": g.names(A), "value": f.values[A]} for A in range(1, 1 << g.n)]}


def metric_doc(m: FiniteMetric) -> dict:
    return {"elements": list(m.ground.labels), "matrix": [list(r) for r in m.dist]}


def tree_doc(t: WeightedTree) -> dict:
    return {"nodes": list(t.nodes), "edges": [list(e) for e in t.edges], "leaves": list(t.leaves)}
