"""Symbolic MMP on a marked partial resolution carrying a sandwiched structure.

The surface is tracked through its intersection table.  Each decorated leaf
carries a divisor ``leaf + ledger`` where the ledger collects the curves the
leaf has degenerated onto.  Contractions of (-1)-curves away from the marks
record one column each; flips of a (-1)-curve at the end of a Wahl chain
rewrite the chain and update the ledgers without recording anything.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classt import is_class_t, solve_linear
from .graph import PResolution, Surface
from .incidence import IncidenceMatrix, canonical
from .sandwich import SandwichedStructure, connector_id, leaf_id


class MMPError(Exception):
    def __init__(self, msg: str, trace: list | None = None):
        super().__init__(msg)
        self.trace = trace or []


class UnsupportedMove(MMPError):
    pass


@dataclass
class Move:
    kind: str  # "contract" | "flip"
    curve: str
    chain: tuple[str, ...] = ()  # flips: the mark, oriented so the last curve meets `curve`
    i: int = 0  # flips: 1-based index of the last entry >= 3


@dataclass
class Step:
    move: Move
    column: dict[str, int] | None
    measure: tuple[int, int]
    snapshot: dict

    def to_json(self) -> dict:
        out = {"kind": self.move.kind, "curve": self.move.curve, "measure": list(self.measure), "state": self.snapshot}
        if self.move.kind == "flip":
            out["chain"] = list(self.move.chain)
            out["i"] = self.move.i
        if self.column is not None:
            out["column"] = self.column
        return out


@dataclass
class MMPState:
    surface: Surface
    marks: list[tuple[str, ...]]
    labels: list[str]
    ledger: dict[str, Counter] = field(default_factory=dict)
    columns: list[tuple[int, ...]] = field(default_factory=list)
    trace: list[Step] = field(default_factory=list)

    @classmethod
    def build(cls, res: PResolution, st: SandwichedStructure) -> "MMPState":
        surf = Surface.from_graph(res.graph)
        where: dict[str, str] = {}
        for u, o in res.origin.items():
            if o is not None:
                where[o] = u
        for v, lab in st.attach:
            host = where.get(v, v)
            if host not in surf.self_int:
                raise ValueError(f"connector host {v} is missing from the resolution graph")
            c = connector_id(lab)
            surf.add_curve(c, -1)
            surf.add_leaf(leaf_id(lab))
            surf.set(c, host, 1)
            surf.set(c, leaf_id(lab), 1)
        state = cls(surf, [tuple(m) for m in res.marks], list(st.labels))
        state.ledger = {lab: Counter() for lab in st.labels}
        for m in state.marks:
            if not _is_wahl_weights(state.weights(m)):
                raise UnsupportedMove(f"mark {list(m)} is not a Wahl chain")
        return state

    # -- basic queries -------------------------------------------------
    def weights(self, chain: Sequence[str]) -> list[int]:
        return [-self.surface.self_int[v] for v in chain]

    def marked(self) -> dict[str, tuple[str, ...]]:
        return {v: m for m in self.marks for v in m}

    def measure(self) -> tuple[int, int]:
        return len(self.surface.self_int), sum(len(m) for m in self.marks) + len(self.marks)

    def divisor(self, lab: str) -> dict[str, int]:
        d = {leaf_id(lab): 1}
        for v, c in self.ledger[lab].items():
            if c:
                d[v] = d.get(v, 0) + c
        return d

    # -- Q-valued intersections on the singular surface -----------------
    def _gram(self, chain: Sequence[str]) -> list[list[Fraction]]:
        s = self.surface
        return [[Fraction(s.get(a, b)) for b in chain] for a in chain]

    def discrepancies(self, chain: Sequence[str]) -> dict[str, Fraction]:
        rhs = [Fraction(w - 2) for w in self.weights(chain)]
        return dict(zip(chain, solve_linear(self._gram(chain), rhs)))

    def sing_dot(self, D: dict[str, int], x: str) -> Fraction:
        """D.x after pulling D back so that it is orthogonal to every mark."""
        s = self.surface
        val = Fraction(s.dot(D, x))
        for m in self.marks:
            rhs = [-Fraction(s.dot(D, a)) for a in m]
            if not any(rhs):
                continue
            coef = solve_linear(self._gram(m), rhs)
            val += sum((c * s.get(a, x) for a, c in zip(m, coef)), Fraction(0))
        return val

    def canonical_dot(self, x: str) -> Fraction:
        s = self.surface
        k = Fraction(-s.self_int[x] - 2)
        for m in self.marks:
            disc = self.discrepancies(m)
            k -= sum((disc[a] * s.get(a, x) for a in m), Fraction(0))
        return k

    # -- moves -----------------------------------------------------------
    def legal_moves(self) -> list[Move]:
        s = self.surface
        marked = self.marked()
        out = []
        for v in sorted(s.self_int):
            if s.self_int[v] != -1 or v in marked:
                continue
            touch = [u for u in s.curve_neighbors(v) if u in marked]
            if not touch:
                out.append(Move("contract", v))
                continue
            chains = {marked[u] for u in touch}
            if len(chains) != 1 or len(touch) != 1:
                continue  # mk2A or a curve through two points of one chain
            (u,) = touch
            m = marked[u]
            if s.get(u, v) != 1 or u not in (m[0], m[-1]):
                continue
            chain = m if u == m[-1] else tuple(reversed(m))
            w = self.weights(chain)
            big = [j for j, a in enumerate(w, 1) if a >= 3]
            if not big:
                continue
            out.append(Move("flip", v, chain, big[-1]))
        return out

    def contract(self, move: Move) -> dict[str, int]:
        s = self.surface
        e = move.curve
        if s.self_int.get(e) != -1:
            raise MMPError(f"{e} is not a (-1)-curve")
        if e in self.marked():
            raise MMPError(f"{e} is marked")
        if any(u in self.marked() for u in s.curve_neighbors(e)):
            raise MMPError(f"{e} meets a marked chain; use flip")
        col = {}
        for lab in self.labels:
            val = s.dot(self.divisor(lab), e)
            if val < 0:
                raise MMPError(f"negative incidence {val} of {lab} at {e}")
            col[lab] = val
        s.blow_down(e)
        for led in self.ledger.values():
            led.pop(e, None)
        return col

    def flip(self, move: Move) -> None:
        s = self.surface
        c, chain, i = move.curve, move.chain, move.i
        kc = self.canonical_dot(c)
        if kc >= 0:
            raise MMPError(f"K.{c} = {kc} is not negative; no flip")
        lam = {lab: self.sing_dot(self.divisor(lab), c) / kc for lab in self.labels}
        gone = [c] + list(reversed(chain[i:]))
        for v in gone:
            if s.self_int[v] != -1:
                raise MMPError(f"flip expected {v} to be a (-1)-curve, found {s.self_int[v]}")
            s.blow_down(v)
            for led in self.ledger.values():
                led.pop(v, None)
        k = self.marks.index(tuple(chain)) if tuple(chain) in self.marks else self.marks.index(tuple(reversed(chain)))
        self.marks.pop(k)
        if i >= 2:
            new = tuple(chain[1:i])
            if not _is_wahl_weights(self.weights(new)):
                raise MMPError(f"flip produced a non-Wahl chain {self.weights(new)}")
            self.marks.insert(k, new)
        cplus = chain[0]
        kp = self.canonical_dot(cplus)
        c2 = self.sing_dot({cplus: 1}, cplus)
        for lab in self.labels:
            dc = self.sing_dot(self.divisor(lab), cplus)
            x = (lam[lab] * kp - dc) / c2
            if x.denominator != 1 or x < 0:
                raise MMPError(f"degeneration coefficient {x} of {lab} onto {cplus} is not a nonnegative integer")
            if x:
                self.ledger[lab][cplus] += int(x)

    # -- presentation ----------------------------------------------------
    def snapshot(self) -> dict:
        s = self.surface
        curves = sorted(s.self_int)
        edges = []
        for i, a in enumerate(curves):
            for b in curves[i + 1:]:
                if s.get(a, b):
                    edges.append([a, b, s.get(a, b)])
        leaves = {lab: sorted(k for k, v in s.meets(leaf_id(lab)).items() if v) for lab in self.labels}
        return {
            "curves": {v: s.self_int[v] for v in curves},
            "edges": edges,
            "marks": [list(m) for m in self.marks],
            "leaves": leaves,
            "ledger": {lab: dict(sorted(c.items())) for lab, c in self.ledger.items() if c},
        }


def _is_wahl_weights(w: Sequence[int]) -> bool:
    cert = is_class_t(w)
    return cert is not None and cert.is_wahl


@dataclass
class MMPResult:
    matrix: IncidenceMatrix
    trace: list[Step]
    flips: int
    contractions: int

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "flips": self.flips,
            "contractions": self.contractions,
            "trace": [st.to_json() for st in self.trace],
        }


def _priority(mv: Move) -> tuple:
    # connectors before chain curves, contractions before flips
    return (mv.kind != "contract", not mv.curve.startswith("x["), mv.curve)


def run_mmp(res: PResolution, st: SandwichedStructure, rng: random.Random | None = None, budget: int = 10_000) -> MMPResult:
    """Run flips and contractions until no curve is left.

    With ``rng`` the next move is drawn uniformly from all legal moves;
    otherwise contractions go first.
    """
    state = MMPState.build(res, st)
    flips = contractions = 0
    steps = 0
    while state.surface.self_int:
        steps += 1
        if steps > budget:
            raise MMPError("step budget exhausted", state.trace)
        moves = state.legal_moves()
        if not moves:
            raise UnsupportedMove(
                f"no legal move; remaining curves {sorted(state.surface.self_int)}", state.trace
            )
        mv = rng.choice(moves) if rng else min(moves, key=_priority)
        before = state.measure()
        col = None
        if mv.kind == "contract":
            col = state.contract(mv)
            contractions += 1
            if any(col.values()):
                state.columns.append(tuple(col[lab] for lab in state.labels))
        else:
            state.flip(mv)
            flips += 1
        after = state.measure()
        if not after[0] < before[0]:
            raise MMPError("termination measure did not decrease", state.trace)
        if mv.kind == "flip" and not after[1] < before[1]:
            raise MMPError("flip did not shrink the marks", state.trace)
        state.trace.append(Step(mv, col, after, state.snapshot()))
    M = IncidenceMatrix(list(state.labels), list(state.columns), "MMP")
    return MMPResult(M, state.trace, flips, contractions)


def mmp_matrix(res: PResolution, st: SandwichedStructure, **kw) -> IncidenceMatrix:
    return run_mmp(res, st, **kw).matrix


@dataclass
class PredicateReport:
    all_ones_column: bool
    root_marked: bool
    all_ones_lemma: bool
    no_free_point_lemma: bool
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.all_ones_lemma and self.no_free_point_lemma


def structural_predicates(res: PResolution, st: SandwichedStructure, M: IncidenceMatrix, root: str | None = None) -> PredicateReport:
    """Check the two structural lemmas relating free points and all-ones columns to marks.

    * an all-ones column forces the root curve to be unmarked;
    * a leaf with no free point, hanging on a curve of weight >= 3, forces
      that curve into a mark.
    """
    from .incidence import free_points

    root = root or st.central or st.attach[0][0]
    where = {o: u for u, o in res.origin.items() if o is not None}
    marked = res.marked()
    root_marked = where.get(root, root) in marked
    ones = any(all(c) for c in M.columns)
    rep = PredicateReport(ones, root_marked, not (ones and root_marked), True)
    if ones and root_marked:
        rep.details.append("all-ones column while the root curve is marked")
    for v, lab in st.attach:
        host = where.get(v, v)
        if st.base.weights[v] >= 3 and free_points(M, lab) == 0 and host not in marked:
            rep.no_free_point_lemma = False
            rep.details.append(f"{lab} has no free point but {v} is unmarked")
    return rep


def trace_to_dot(trace: Sequence[Step]) -> str:
    """One undirected graph per step; boxes are marked curves, bold edges are ledger entries."""
    out = []
    for n, step in enumerate(trace, 1):
        snap = step.snapshot
        marked = {v for m in snap["marks"] for v in m}
        lines = [f'graph step{n} {{', f'  label="{n}: {step.move.kind} {step.move.curve}";']
        for v, si in snap["curves"].items():
            shape = "box" if v in marked else "circle"
            lines.append(f'  "{v}" [shape={shape}, label="{si}"];')
        for a, b, m in snap["edges"]:
            lines.append(f'  "{a}" -- "{b}"' + (f' [label="{m}"]' if m != 1 else "") + ";")
        for lab, hosts in snap["leaves"].items():
            lines.append(f'  "{lab}" [shape=plaintext];')
            for h in hosts:
                lines.append(f'  "{lab}" -- "{h}";')
        for lab, led in snap["ledger"].items():
            for h in led:
                lines.append(f'  "{lab}" -- "{h}" [style=bold, penwidth=3];')
        lines.append("}")
        out.append("\n".join(lines))
    return "\n\n".join(out) + "\n"


def trace_to_json(trace: Sequence[Step]) -> str:
    return json.dumps([s.to_json() for s in trace], indent=2, sort_keys=True)


def same_canonical(a: IncidenceMatrix, b: IncidenceMatrix) -> bool:
    if list(a.rows) != list(b.rows):
        b = b.reorder(a.rows)
    return canonical(a) == canonical(b)
