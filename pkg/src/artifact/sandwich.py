"""Sandwiched structures on chains and stars, and their combinatorial data."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .cfrac import hj_dual
from .graph import DualGraph, Surface, chain_graph


@dataclass
class SandwichedStructure:
    """A dual graph plus (-1)-connectors, each joining a base curve to one leaf.

    ``attach`` lists (base vertex, leaf label) in leaf order.
    """

    base: DualGraph
    attach: list[tuple[str, str]]
    central: str | None = None
    branches: list[list[str]] = field(default_factory=list)

    @property
    def labels(self) -> list[str]:
        return [lab for _, lab in self.attach]

    def connector_counts(self) -> dict[str, int]:
        out = {v: 0 for v in self.base.weights}
        for v, _ in self.attach:
            out[v] += 1
        return out

    def surface(self) -> Surface:
        s = Surface.from_graph(self.base)
        for v, lab in self.attach:
            c = connector_id(lab)
            s.add_curve(c, -1)
            s.add_leaf(leaf_id(lab))
            s.set(c, v, 1)
            s.set(c, leaf_id(lab), 1)
        return s

    def to_json(self) -> dict:
        out = self.base.to_json()
        out["leaves"] = [{"id": connector_id(lab), "label": lab, "on": v} for v, lab in self.attach]
        return out


def connector_id(label: str) -> str:
    return f"x[{label}]"


def leaf_id(label: str) -> str:
    # leaves live in their own namespace inside intersection tables
    return f"<{label}>"


@dataclass
class CombinatorialData:
    labels: list[str]
    lengths: dict[str, int]
    pair: dict[tuple[str, str], int]
    delta: dict[str, int]

    def p(self, a: str, b: str) -> int:
        return self.pair[(a, b)] if (a, b) in self.pair else self.pair[(b, a)]


def usual_sandwich_cqss(chain: Sequence[int], prefix: str = "A") -> SandwichedStructure:
    """Root-first chain: a_1 - 2 connectors on A_1, a_i - 2 inside, a_r - 1 at the end.

    A_1 is the last curve to contract; leaves are numbered from the root outwards.
    """
    chain = list(chain)
    if not chain:
        raise ValueError("empty chain")
    return _star_like(chain[0], [chain[1:]] if len(chain) > 1 else [], root_only=True, prefix=prefix)


def sandwich_whs(d: int, branches: Sequence[Sequence[int]]) -> SandwichedStructure:
    """Star with central weight d; each branch listed from the centre outwards."""
    t = len(branches)
    if d < t + 1:
        raise ValueError(f"need d >= t+1, got d={d}, t={t}")
    if t == 1:
        return usual_sandwich_cqss([d] + list(branches[0]))
    return _star_like(d, [list(b) for b in branches], root_only=False)


def _star_like(d: int, branches: list[list[int]], root_only: bool, prefix: str = "A") -> SandwichedStructure:
    t = len(branches)
    if root_only:
        # a chain rooted at its first curve
        ids = [f"{prefix}{i + 1}" for i in range(1 + (len(branches[0]) if branches else 0))]
        weights = [d] + (branches[0] if branches else [])
        g = chain_graph(weights, prefix)
        counts = [w - 2 for w in weights]
        counts[-1] += 1
        attach = []
        j = 0
        for v, c in zip(ids, counts):
            for _ in range(c):
                j += 1
                attach.append((v, f"C{j}"))
        return SandwichedStructure(g, attach, central=ids[0], branches=[ids[1:]] if t else [])
    g = DualGraph({"Ac": d}, shape="star")
    arms = []
    attach = []
    for i, br in enumerate(branches, 1):
        ids = [f"A{i},{j}" for j in range(1, len(br) + 1)]
        prev = "Ac"
        for v, w in zip(ids, br):
            g.weights[v] = w
            g.edges.add(frozenset((prev, v)))
            prev = v
        arms.append(ids)
        j = 0
        for k, (v, w) in enumerate(zip(ids, br)):
            c = w - 1 if k == len(br) - 1 else w - 2
            for _ in range(c):
                j += 1
                attach.append((v, f"C{i},{j}"))
    for k in range(d - t - 1):
        attach.append(("Ac", f"D{k + 1}"))
    return SandwichedStructure(g, attach, central="Ac", branches=arms)


def custom_structure(base: DualGraph, counts: dict[str, int], order: Sequence[str], labels: Sequence[str]) -> SandwichedStructure:
    """Attach counts[v] connectors to v, visiting vertices in ``order``."""
    attach = []
    it = iter(labels)
    for v in order:
        for _ in range(counts.get(v, 0)):
            attach.append((v, next(it)))
    return SandwichedStructure(base, attach)


def _replay(st: SandwichedStructure, rng: random.Random | None = None):
    s = st.surface()
    events: list[dict[str, int]] = []
    while s.self_int:
        cands = sorted(v for v, x in s.self_int.items() if x == -1)
        if not cands:
            return None
        e = rng.choice(cands) if rng else cands[0]
        met = s.meets(e)
        events.append({lab: met[leaf_id(lab)] for lab in st.labels if leaf_id(lab) in met})
        s.blow_down(e)
    return events


def contracts_to_point(st: SandwichedStructure) -> bool:
    return _replay(st) is not None


def combinatorial_data(st: SandwichedStructure, rng: random.Random | None = None) -> CombinatorialData:
    events = _replay(st, rng)
    if events is None:
        raise ValueError("structure does not contract to a smooth point")
    labels = st.labels
    lengths = {lab: sum(ev.get(lab, 0) for ev in events) for lab in labels}
    pair = {}
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            pair[(a, b)] = sum(ev.get(a, 0) * ev.get(b, 0) for ev in events)
    return CombinatorialData(list(labels), lengths, pair, {lab: 0 for lab in labels})


def leaf_count(chain: Sequence[int]) -> int:
    return len(hj_dual(chain))


def blow_up(graph: DualGraph, where: tuple[str, ...]) -> DualGraph:
    """Blow up a node (pair of adjacent curves) or a free point on one curve."""
    if len(where) == 2:
        return graph.blow_up_edge(*where)[0]
    return graph.blow_up_point(where[0])[0]


def blow_down(graph: DualGraph, v: str) -> DualGraph:
    return graph.blow_down(v)
