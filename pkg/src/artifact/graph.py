"""Weighted dual graphs, marked partial resolutions and intersection tables.

Weights are stored as positive integers w meaning self-intersection -w.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable


@dataclass
class DualGraph:
    weights: dict[str, int]
    edges: set[frozenset] = field(default_factory=set)
    shape: str = "general"

    def copy(self) -> "DualGraph":
        return DualGraph(dict(self.weights), set(self.edges), self.shape)

    def neighbors(self, v: str) -> list[str]:
        out = []
        for e in self.edges:
            if v in e:
                (u,) = tuple(e - {v})
                out.append(u)
        return sorted(out)

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def fresh_id(self, prefix: str = "E") -> str:
        i = 1
        while f"{prefix}{i}" in self.weights:
            i += 1
        return f"{prefix}{i}"

    def blow_up_edge(self, u: str, v: str, new: str | None = None) -> tuple["DualGraph", str]:
        if not self.has_edge(u, v):
            raise ValueError(f"{u} and {v} do not meet")
        g = self.copy()
        new = new or g.fresh_id()
        g.edges.discard(frozenset((u, v)))
        g.weights[u] += 1
        g.weights[v] += 1
        g.weights[new] = 1
        g.edges |= {frozenset((u, new)), frozenset((new, v))}
        return g, new

    def blow_up_point(self, v: str, new: str | None = None) -> tuple["DualGraph", str]:
        g = self.copy()
        new = new or g.fresh_id()
        g.weights[v] += 1
        g.weights[new] = 1
        g.edges.add(frozenset((v, new)))
        return g, new

    def blow_down(self, v: str) -> "DualGraph":
        if self.weights.get(v) != 1:
            raise ValueError(f"{v} is not a (-1)-curve")
        nb = self.neighbors(v)
        if len(nb) > 2:
            raise ValueError(f"{v} meets {len(nb)} curves; result would not be a plumbing graph")
        g = self.copy()
        del g.weights[v]
        g.edges = {e for e in g.edges if v not in e}
        for u in nb:
            g.weights[u] -= 1
        if len(nb) == 2:
            g.edges.add(frozenset(nb))
        return g

    def is_chain(self) -> bool:
        return self.chain_order() is not None

    def chain_order(self, start: str | None = None) -> list[str] | None:
        if not self.weights:
            return []
        deg = {v: len(self.neighbors(v)) for v in self.weights}
        if any(d > 2 for d in deg.values()):
            return None
        ends = sorted(v for v, d in deg.items() if d <= 1)
        if not ends:
            return None
        cur = start if start is not None else ends[0]
        order, prev = [cur], None
        while True:
            nxt = [u for u in self.neighbors(cur) if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            order.append(cur)
        return order if len(order) == len(self.weights) else None

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "weight": -w} for v, w in sorted(self.weights.items())],
            "edges": sorted(sorted(e) for e in self.edges),
        }


def chain_graph(entries: Iterable[int], prefix: str = "A") -> DualGraph:
    entries = list(entries)
    ids = [f"{prefix}{i + 1}" for i in range(len(entries))]
    g = DualGraph(dict(zip(ids, entries)), shape="chain")
    for a, b in zip(ids, ids[1:]):
        g.edges.add(frozenset((a, b)))
    return g


@dataclass
class PResolution:
    """A blown-up dual graph with marked class-T chains.

    ``marks`` lists each marked chain as an ordered tuple of vertex ids.
    ``origin`` maps every vertex to the minimal-resolution curve it is the
    strict transform of, or None for curves created by blow-ups.
    """

    graph: DualGraph
    marks: list[tuple[str, ...]] = field(default_factory=list)
    origin: dict[str, str | None] = field(default_factory=dict)
    label: str = ""

    def marked(self) -> set[str]:
        return {v for m in self.marks for v in m}

    def mark_weights(self) -> list[list[int]]:
        return [[self.graph.weights[v] for v in m] for m in self.marks]

    def to_json(self) -> dict:
        out = self.graph.to_json()
        out["marks"] = [list(m) for m in self.marks]
        out["origin"] = {k: v for k, v in sorted(self.origin.items())}
        if self.label:
            out["label"] = self.label
        return out


class Surface:
    """Intersection numbers among curves and decorated leaves.

    Curves carry self-intersections; leaves are strict transforms of the
    decorated curves and only their mutual intersections with curves matter.
    Blowing down a curve E updates X.Y += (X.E)(Y.E) for the survivors.
    """

    def __init__(self) -> None:
        self.self_int: dict[str, int] = {}
        self.leaves: list[str] = []
        self._I: dict[str, dict[str, int]] = defaultdict(dict)

    @classmethod
    def from_graph(cls, g: DualGraph) -> "Surface":
        s = cls()
        for v, w in g.weights.items():
            s.self_int[v] = -w
        for e in g.edges:
            u, v = tuple(e)
            s.set(u, v, 1)
        return s

    def copy(self) -> "Surface":
        s = Surface()
        s.self_int = dict(self.self_int)
        s.leaves = list(self.leaves)
        for k, row in self._I.items():
            s._I[k] = dict(row)
        return s

    def add_curve(self, v: str, self_int: int) -> None:
        self.self_int[v] = self_int

    def add_leaf(self, leaf: str) -> None:
        self.leaves.append(leaf)

    def get(self, x: str, y: str) -> int:
        if x == y:
            if x in self.self_int:
                return self.self_int[x]
            raise ValueError(f"self-intersection of leaf {x} is not tracked")
        return self._I.get(x, {}).get(y, 0)

    def set(self, x: str, y: str, val: int) -> None:
        if val:
            self._I[x][y] = val
            self._I[y][x] = val
        else:
            self._I[x].pop(y, None)
            self._I[y].pop(x, None)

    def meets(self, x: str) -> dict[str, int]:
        return {k: v for k, v in self._I.get(x, {}).items() if v}

    def curves(self) -> list[str]:
        return sorted(self.self_int)

    def curve_neighbors(self, x: str) -> list[str]:
        return sorted(k for k in self.meets(x) if k in self.self_int)

    def blow_down(self, e: str) -> None:
        if self.self_int.get(e) != -1:
            raise ValueError(f"{e} is not a (-1)-curve")
        touch = self.meets(e)
        for x, ex in touch.items():
            if x in self.self_int:
                self.self_int[x] += ex * ex
        items = list(touch.items())
        for i, (x, ex) in enumerate(items):
            for y, ey in items[i + 1:]:
                self.set(x, y, self.get(x, y) + ex * ey)
        for x in list(touch):
            self.set(x, e, 0)
        del self.self_int[e]
        self._I.pop(e, None)

    def dot(self, D: dict[str, int], x: str):
        """Intersection of the divisor sum(c_v v) with the curve or leaf x."""
        return sum(c * self.get(v, x) for v, c in D.items() if c)
