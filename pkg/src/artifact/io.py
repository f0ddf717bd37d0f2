"""JSON and DOT serialization for resolutions, matrices and star singularities."""

from __future__ import annotations

import json
from typing import Any

from .cfrac import hj_expand
from .graph import DualGraph, PResolution, chain_graph
from .incidence import IncidenceMatrix
from .sandwich import SandwichedStructure, usual_sandwich_cqss


class InputError(ValueError):
    pass


def _chain_of(doc: dict) -> list[int]:
    if "chain" in doc:
        return [int(x) for x in doc["chain"]]
    if "n" in doc and "q" in doc:
        return hj_expand(int(doc["n"]), int(doc["q"]))
    raise InputError("need 'chain' or 'n' and 'q'")


def graph_from_json(doc: dict) -> DualGraph:
    try:
        weights = {v["id"]: -int(v["weight"]) for v in doc["vertices"]}
        edges = {frozenset(e) for e in doc.get("edges", [])}
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed graph: {exc}") from exc
    if any(w < 1 for w in weights.values()):
        raise InputError("self-intersections must be negative")
    for e in edges:
        if len(e) != 2 or not e <= weights.keys():
            raise InputError(f"bad edge {sorted(e)}")
    return DualGraph(weights, edges)


def load_resolution(doc: dict) -> tuple[PResolution, SandwichedStructure]:
    """A marked chain resolution together with the usual structure of its minimal chain.

    Accepted keys: ``chain`` or ``n``/``q`` for the minimal resolution,
    optional ``graph`` (vertices/edges, default: the minimal chain),
    ``marks`` and ``origin``.
    """
    chain = _chain_of(doc)
    st = usual_sandwich_cqss(chain)
    g = graph_from_json(doc["graph"]) if "graph" in doc else chain_graph(chain)
    origin = doc.get("origin") or {v: (v if v in st.base.weights else None) for v in g.weights}
    marks = [tuple(m) for m in doc.get("marks", [])]
    for m in marks:
        if not set(m) <= g.weights.keys():
            raise InputError(f"mark {list(m)} uses unknown curves")
    return PResolution(g, marks, origin, doc.get("label", "")), st


def matrix_from_json(doc: Any) -> IncidenceMatrix:
    if isinstance(doc, dict) and "rows" in doc and "matrix" in doc:
        return IncidenceMatrix.from_rows(doc["rows"], doc["matrix"], doc.get("provenance", ""))
    raise InputError("matrix documents need 'rows' and 'matrix'")


def star_from_json(doc: dict):
    from .whs import StarSingularity

    if "d" not in doc:
        raise InputError("star documents need 'd'")
    if "branches" in doc:
        return StarSingularity(int(doc["d"]), [[int(x) for x in b] for b in doc["branches"]])
    if "fractions" in doc:
        return StarSingularity.from_fractions(int(doc["d"]), [tuple(p) for p in doc["fractions"]])
    raise InputError("star documents need 'branches' or 'fractions'")


def presolution_to_dot(res: PResolution, name: str = "P") -> str:
    """Circles for ordinary curves, boxes for marked ones."""
    marked = res.marked()
    lines = [f"graph {name} {{"]
    for v, w in sorted(res.graph.weights.items()):
        shape = "box" if v in marked else "circle"
        lines.append(f'  "{v}" [shape={shape}, label="-{w}"];')
    for e in sorted(sorted(e) for e in res.graph.edges):
        lines.append(f'  "{e[0]}" -- "{e[1]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
