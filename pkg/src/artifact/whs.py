"""Star-shaped (weighted homogeneous) singularities with a big central node.

Combinatorial incidence matrices are sorted into Case A / B1 / B2, a
P-resolution is synthesized for each by solving cyclic-quotient subproblems
on chains, and the result is checked by running the MMP on the star.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cfrac import hj_expand
from .classt import ample_check, discrepancies_graph, is_wahl
from .graph import DualGraph, PResolution, chain_graph
from .incidence import (
    CanonicalForm,
    IncidenceMatrix,
    _type2,
    canonical,
    enumerate_all,
    verify,
)
from .mmp import MMPError, run_mmp
from .sandwich import (
    CombinatorialData,
    SandwichedStructure,
    combinatorial_data,
    custom_structure,
    sandwich_whs,
)
from .stevens import enumerate_chain_presolutions, m_resolution


class TheoremViolation(ValueError):
    """The matrix breaks the structure the classification relies on."""

    def __init__(self, msg: str, witness: dict | None = None):
        super().__init__(msg)
        self.witness = witness or {}


class SynthesisError(RuntimeError):
    def __init__(self, msg: str, diagnostics: dict | None = None):
        super().__init__(msg)
        self.diagnostics = diagnostics or {}


# ---------------------------------------------------------------------------
# the singularity


@dataclass
class StarSingularity:
    d: int
    branches: list[list[int]]  # each listed from the central curve outwards

    def __post_init__(self) -> None:
        self.branches = [list(b) for b in self.branches]
        if any(not b or any(a < 2 for a in b) for b in self.branches):
            raise ValueError("branches must be nonempty chains of entries >= 2")
        if self.d < self.t + 1:
            raise ValueError(f"need d >= t+1 (d={self.d}, t={self.t})")

    @classmethod
    def from_fractions(cls, d: int, pairs: Sequence[tuple[int, int]]) -> "StarSingularity":
        # pairs are accepted in either order; the larger entry is the numerator
        return cls(d, [hj_expand(max(p), min(p)) for p in pairs])

    @property
    def t(self) -> int:
        return len(self.branches)

    @property
    def big_node(self) -> bool:
        return self.d >= self.t + 3

    def structure(self) -> SandwichedStructure:
        return sandwich_whs(self.d, self.branches)

    def data(self) -> CombinatorialData:
        return combinatorial_data(self.structure())

    def branch_rows(self) -> list[list[str]]:
        st = self.structure()
        return [[lab for v, lab in st.attach if v in arm] for arm in st.branches]

    def d_rows(self) -> list[str]:
        st = self.structure()
        return [lab for v, lab in st.attach if v == st.central]

    def to_json(self) -> dict:
        return {"d": self.d, "branches": self.branches}


def _as_star(M: IncidenceMatrix, X: StarSingularity) -> IncidenceMatrix:
    labels = X.structure().labels
    if list(M.rows) != labels:
        if sorted(M.rows) != sorted(labels):
            raise ValueError(f"row labels {M.rows} do not match {labels}")
        M = M.reorder(labels)
    return M


# ---------------------------------------------------------------------------
# D rows


def d_block_check(M: IncidenceMatrix, X: StarSingularity) -> bool:
    """D rows, restricted to their support, are one all-ones column plus an identity."""
    M = _as_star(M, X)
    D = X.d_rows()
    if not D:
        return True
    sub = M.restrict(D)
    cols = sorted(sub.columns, reverse=True)
    want = sorted([tuple(1 for _ in D)] + [tuple(int(i == k) for i in range(len(D))) for k in range(len(D))], reverse=True)
    return cols == want


# ---------------------------------------------------------------------------
# classification


@dataclass
class CaseTag:
    kind: str  # "CaseA" | "CaseB1" | "CaseB2"
    p0: int
    first: int | None = None  # 1-based branch holding the degenerating rows
    partner: int | None = None  # 1-based branch paired as type 2-1 (B2 only)
    e: int | None = None
    degenerating: list[str] = field(default_factory=list)
    g: dict[int, int] = field(default_factory=dict)  # other branch -> number of q-columns
    q_columns: dict[int, list[int]] = field(default_factory=dict)
    stair: list[list[str]] = field(default_factory=list)
    stair_shaped: bool = True  # False: a type 2-1 partner whose q-columns overlap
    s: int = 0
    blocks: dict[int, IncidenceMatrix] = field(default_factory=dict)
    permutation: list[int] = field(default_factory=list)

    @property
    def g_prime(self) -> int | None:
        return self.g.get(self.partner) if self.partner else None

    def to_json(self) -> dict:
        out = {"case": self.kind, "p0": self.p0}
        if self.kind != "CaseA":
            out.update(
                first_branch=self.first,
                e=self.e,
                degenerating=self.degenerating,
                g={str(k): v for k, v in sorted(self.g.items())},
                s=self.s,
                branch_order=self.permutation,
            )
            if self.partner:
                out.update(partner=self.partner, g_prime=self.g_prime, stair=self.stair, stair_shaped=self.stair_shaped)
        else:
            out["blocks"] = {str(i): b.as_rows() for i, b in sorted(self.blocks.items())}
        return out


def _p0_candidates(M: IncidenceMatrix, D: Sequence[str]) -> list[int]:
    idx = [M.rows.index(r) for r in D]
    return [j for j, c in enumerate(M.columns) if all(c[i] for i in idx)]


def _classify_at(M: IncidenceMatrix, X: StarSingularity, p0: int) -> CaseTag:
    arms = X.branch_rows()
    D = X.d_rows()
    inside = M.support(p0)
    missing = [r for r in M.rows if r not in inside]
    if any(r in missing for r in D):
        raise TheoremViolation("p0 misses a D row", {"p0": p0})
    if not missing:
        tag = CaseTag("CaseA", p0)
        for i, arm in enumerate(arms, 1):
            cols = [c for j, c in enumerate(M.columns) if j != p0]
            sub = IncidenceMatrix(list(M.rows), cols).restrict(arm)
            tag.blocks[i] = sub
        for j, c in enumerate(M.columns):
            if j == p0:
                continue
            owners = {i for i, arm in enumerate(arms, 1) if M.support(j) & set(arm)}
            if len(owners) > 1:
                raise TheoremViolation("a column other than p0 meets two branches", {"column": j, "branches": sorted(owners)})
        return tag
    owners = sorted({i for i, arm in enumerate(arms, 1) for r in missing if r in arm})
    if len(owners) > 1:
        raise TheoremViolation(
            "decorated curves degenerating to the central curve come from more than one branch",
            {"p0": p0, "rows": missing, "branches": owners},
        )
    first = owners[0]
    a1 = arms[first - 1]
    tags = {}
    for i, arm in enumerate(arms, 1):
        if i == first:
            continue
        sub = M.restrict(a1 + arm + D, drop_empty=False)
        tt = _type2(sub, a1, arm, D, p0)
        if tt.kind == "unclassified" and tt.q_columns and tt.degenerating:
            # The central curve sits in a Wahl chain reaching into this branch,
            # but a blow-up inside the branch can make one degenerating row pass
            # through several q-columns, so no stair appears.  Construction does
            # not need the stair; verification decides.
            tt.kind = "Type2_1"
            tt.stair = None
        if tt.kind not in ("Type2_1", "Type2_2"):
            raise TheoremViolation(f"[M_{first}, M_{i}, D] has no type ({tt.note})", {"branch": i, "p0": p0})
        tags[i] = tt
    two_one = [i for i, tt in tags.items() if tt.kind == "Type2_1"]
    if len(two_one) > 1:
        raise TheoremViolation("more than one type 2-1 partner", {"branches": two_one})
    any_tag = next(iter(tags.values()))
    tag = CaseTag("CaseB2" if two_one else "CaseB1", p0, first=first, e=any_tag.e, degenerating=list(any_tag.degenerating))
    for i, tt in tags.items():
        tag.g[i] = len(tt.q_columns)
        tag.q_columns[i] = list(tt.q_columns)
    if two_one:
        tag.partner = two_one[0]
        tag.stair = tags[tag.partner].stair or []
        tag.stair_shaped = tags[tag.partner].stair is not None
    rest = [i for i in tags if i != tag.partner]
    tag.s = sum(tag.g[i] - 1 for i in rest if tag.g[i] >= 2)
    lhs = X.t - (2 if tag.partner else 1) + tag.s
    if lhs != sum(tag.g[i] for i in rest):
        raise TheoremViolation("q-column count identity fails", {"lhs": lhs, "g": tag.g})
    tag.permutation = [first] + ([tag.partner] if tag.partner else []) + [i for i in range(1, X.t + 1) if i not in (first, tag.partner)]
    return tag


def classify_case(M: IncidenceMatrix, X: StarSingularity) -> CaseTag:
    """Case A / B1 / B2 of a combinatorial incidence matrix on the star.

    When p0 is not unique (a single D row) every candidate is tried and the
    first that classifies wins; if none does, the first violation is raised.
    """
    M = _as_star(M, X)
    rep = verify(M, X.data())
    if not rep.ok:
        raise ValueError(f"not a combinatorial incidence matrix: {rep.violations[:3]}")
    D = X.d_rows()
    if len(D) >= 2 and not d_block_check(M, X):
        raise TheoremViolation("D rows do not have the forced shape")
    cands = _p0_candidates(M, D) if D else list(range(len(M.columns)))
    errors = []
    for p0 in cands:
        try:
            return _classify_at(M, X, p0)
        except TheoremViolation as exc:
            errors.append(exc)
    if errors:
        raise errors[0]
    raise TheoremViolation("no column contains every D row")


# ---------------------------------------------------------------------------
# chain subproblems


_SOLVE_CACHE: dict = {}


def _chain_matrices(weights: tuple[int, ...], st: SandwichedStructure, depth: int):
    key = (weights, tuple(st.attach), depth)
    if key not in _SOLVE_CACHE:
        table = []
        for res in enumerate_chain_presolutions(list(weights), depth):
            run = res if all(is_wahl(w) for w in res.mark_weights()) else m_resolution(res)
            if run is None:
                continue
            M = run_mmp(run, st).matrix
            table.append((canonical(M), res))
        _SOLVE_CACHE[key] = table
    return _SOLVE_CACHE[key]


def solve_chain(weights: Sequence[int], st: SandwichedStructure, target: IncidenceMatrix, depth: int = 3) -> PResolution:
    """The P-resolution of the chain whose MMP matrix equals ``target`` canonically."""
    target = target.reorder(st.labels)
    can = canonical(target)
    hits = [res for c, res in _chain_matrices(tuple(weights), st, depth) if c == can]
    if not hits:
        raise SynthesisError(
            "inverse lookup miss",
            {"chain": list(weights), "target": target.as_rows(), "rows": target.rows, "depth": depth},
        )
    if len(hits) > 1:
        raise SynthesisError("several P-resolutions realize the target", {"chain": list(weights), "count": len(hits)})
    return hits[0]


def _relabeled(st: SandwichedStructure, labels: Sequence[str]) -> SandwichedStructure:
    return SandwichedStructure(st.base, [(v, lab) for (v, _), lab in zip(st.attach, labels)], st.central, st.branches)


def _chain_structure(weights: Sequence[int], counts: Sequence[int], labels_per_curve: Sequence[Sequence[str]]) -> SandwichedStructure:
    g = chain_graph(weights)
    ids = [f"A{j + 1}" for j in range(len(weights))]
    order_labels = [lab for labs in labels_per_curve for lab in labs]
    st = custom_structure(g, dict(zip(ids, counts)), ids, order_labels)
    if [len(x) for x in labels_per_curve] != list(counts):
        raise AssertionError("label/count mismatch")
    return st


# ---------------------------------------------------------------------------
# synthesis


@dataclass
class StarPResolution:
    res: PResolution
    provenance: dict[str, str] = field(default_factory=dict)  # mark key -> rule
    tag: CaseTag | None = None
    ample: object = None
    pair_sums: list[tuple[str, Fraction]] = field(default_factory=list)

    def mark_weights(self) -> list[list[int]]:
        return self.res.mark_weights()

    def to_json(self) -> dict:
        out = self.res.to_json()
        out["provenance"] = self.provenance
        out["pair_sums"] = [[v, str(x)] for v, x in self.pair_sums]
        return out


def _star_graph(X: StarSingularity, g: dict[int, int]) -> tuple[DualGraph, dict[str, str | None], dict[int, list[str]]]:
    """Star base with g_i - 1 blow-ups at the central node of each branch with g_i >= 2."""
    st = X.structure()
    G = st.base.copy()
    origin: dict[str, str | None] = {v: v for v in G.weights}
    extra: dict[int, list[str]] = {}
    for i, gi in g.items():
        if gi < 2:
            continue
        first = f"A{i},1"
        nb = first
        made = []
        for k in range(gi - 1):
            G, new = G.blow_up_edge("Ac", nb, f"B{i},{k}")
            origin[new] = None
            made.append(new)
            nb = new
        # outwards from Ac: the last (-1) made, then the (-2)s, newest first
        extra[i] = list(reversed(made))
    return G, origin, extra


def _splice(G: DualGraph, origin: dict, marks: list, seg: Sequence[str], sub: PResolution, rule: str, prov: dict, tag: str) -> None:
    """Replace the path ``seg`` of G by the blown-up chain of ``sub`` (ids A1.. map onto seg)."""
    name = {f"A{j + 1}": v for j, v in enumerate(seg)}
    for a, b in zip(seg, seg[1:]):
        G.edges.discard(frozenset((a, b)))
    order = sub.graph.chain_order("A1")
    ids = []
    n = 0
    for u in order:
        o = sub.origin.get(u)
        if o is None:
            n += 1
            v = f"{tag}E{n}"
            origin[v] = None
        else:
            v = name[o]
        G.weights[v] = sub.graph.weights[u]
        ids.append(v)
    G.edges |= {frozenset(p) for p in zip(ids, ids[1:])}
    back = dict(zip(order, ids))
    for m in sub.marks:
        mm = tuple(back[u] for u in m)
        marks.append(mm)
        prov[",".join(mm)] = rule


def construct_presolution(M: IncidenceMatrix, X: StarSingularity, tag: CaseTag | None = None, depth: int = 3) -> StarPResolution:
    M = _as_star(M, X)
    tag = tag or classify_case(M, X)
    arms = X.branch_rows()
    D = X.d_rows()
    st = X.structure()
    arm_ids = st.branches
    p0 = tag.p0
    g = {} if tag.kind == "CaseA" else {i: v for i, v in tag.g.items() if i != tag.partner}
    G, origin, extra = _star_graph(X, g)
    marks: list[tuple[str, ...]] = []
    prov: dict[str, str] = {}
    s = 0 if tag.kind == "CaseA" else tag.s
    G.weights["Ac"] = X.d + s

    def branch_block(i: int, keep_q: bool) -> IncidenceMatrix:
        rows = arms[i - 1]
        cols = []
        for j, c in enumerate(M.columns):
            if j == p0:
                continue
            sup = M.support(j)
            if sup <= set(rows) or (keep_q and j in tag.q_columns.get(i, []) and sup & set(rows)):
                cols.append(tuple(c[M.rows.index(r)] for r in rows))
        return IncidenceMatrix(list(rows), [c for c in cols if any(c)])

    def solve_usual_branch(i: int, keep_q: bool, rule: str) -> None:
        br = X.branches[i - 1]
        counts = [w - 2 for w in br]
        counts[-1] += 1
        labels = iter(arms[i - 1])
        per = [[next(labels) for _ in range(c)] for c in counts]
        sub_st = _chain_structure(br, counts, per)
        block = branch_block(i, keep_q)
        _check_target(block, sub_st, f"branch {i}")
        sub = solve_chain(br, sub_st, block, depth)
        _splice(G, origin, marks, arm_ids[i - 1], sub, rule, prov, f"b{i}")

    if tag.kind == "CaseA":
        for i in range(1, X.t + 1):
            solve_usual_branch(i, False, "CaseA branch")
    else:
        first = tag.first
        rest = [i for i in range(1, X.t + 1) if i not in (first, tag.partner)]
        qlist = [(i, j) for i in rest for j in tag.q_columns[i]]
        E = [f"E{k + 1}" for k in range(len(qlist))]
        long_rows = arms[first - 1] + (arms[tag.partner - 1] if tag.partner else []) + D
        cols = []
        for j, c in enumerate(M.columns):
            vals = [c[M.rows.index(r)] for r in long_rows]
            evals = [int(j == p0 or j == qj) for _, qj in qlist]
            if any(vals) or any(evals):
                cols.append(tuple(vals + evals))
        target = IncidenceMatrix(long_rows + E, cols)
        b1 = X.branches[first - 1]
        if tag.kind == "CaseB1":
            weights = [X.d + s] + b1
            seg = ["Ac"] + arm_ids[first - 1]
            counts = [X.d + s - 2] + [w - 2 for w in b1]
            counts[-1] += 1
            labels = iter(arms[first - 1])
            per = [D + E] + [[next(labels) for _ in range(c)] for c in counts[1:]]
            rule = "CaseB1 long chain"
        else:
            b2 = X.branches[tag.partner - 1]
            weights = list(reversed(b1)) + [X.d + s] + b2
            seg = list(reversed(arm_ids[first - 1])) + ["Ac"] + arm_ids[tag.partner - 1]
            c1 = [w - 2 for w in b1]
            c1[-1] += 1
            c2 = [w - 2 for w in b2]
            c2[-1] += 1
            counts = list(reversed(c1)) + [X.d + s - 3] + c2
            l1 = iter(arms[first - 1])
            per1 = [[next(l1) for _ in range(c)] for c in c1]
            l2 = iter(arms[tag.partner - 1])
            per2 = [[next(l2) for _ in range(c)] for c in c2]
            per = list(reversed(per1)) + [D + E] + per2
            rule = "CaseB2 long chain"
        sub_st = _chain_structure(weights, counts, per)
        _check_target(target, sub_st, rule)
        sub = solve_chain(weights, sub_st, target, depth)
        _splice(G, origin, marks, seg, sub, rule, prov, "L")
        for i in rest:
            gi = tag.g[i]
            if gi == 1:
                solve_usual_branch(i, True, "g=1 branch")
                continue
            br = X.branches[i - 1]
            weights = [2] * (gi - 2) + [br[0] + 1] + br[1:]
            counts = [0] * (gi - 2) + [br[0] - 2] + [w - 2 for w in br[1:]]
            counts[-1] += 1
            counts[0] += 1  # F
            labels = iter(arms[i - 1])
            per = []
            for k, cnt in enumerate(counts):
                if k == 0:
                    per.append(["F"] + [next(labels) for _ in range(cnt - 1)])
                else:
                    per.append([next(labels) for _ in range(cnt)])
            sub_st = _chain_structure(weights, counts, per)
            rows = arms[i - 1]
            cols = []
            for j, c in enumerate(M.columns):
                if j == p0 or not (M.support(j) <= set(rows) or j in tag.q_columns[i]):
                    continue
                col = tuple(c[M.rows.index(r)] for r in rows) + (int(j in tag.q_columns[i]),)
                if any(col):
                    cols.append(col)
            target = IncidenceMatrix(rows + ["F"], cols)
            _check_target(target, sub_st, f"F-augmented branch {i}")
            sub = solve_chain(weights, sub_st, target, depth)
            _splice(G, origin, marks, extra[i][1:] + arm_ids[i - 1], sub, f"F-augmented branch (g={gi})", prov, f"b{i}")

    res = PResolution(G, marks, origin, label=tag.kind)
    rep = ample_check(res)
    out = StarPResolution(res, prov, tag, rep, _pair_sums(res))
    if not rep.ample:
        raise SynthesisError("ampleness fails", {"curves": rep.failures, "values": {k: str(v) for k, v in rep.values.items()}})
    return out


def _check_target(target: IncidenceMatrix, st: SandwichedStructure, what: str) -> None:
    rep = verify(target, combinatorial_data(st))
    if not rep.ok:
        raise SynthesisError(f"{what}: augmented matrix fails its equations", {"violations": rep.violations, "matrix": target.as_rows(), "rows": target.rows})


def _pair_sums(res: PResolution) -> list[tuple[str, Fraction]]:
    """m_a + m_b for each (-1)-curve between two marks; ampleness needs < -1."""
    g = res.graph
    disc: dict[str, Fraction] = {}
    for m in res.marks:
        disc.update(discrepancies_graph(g.weights, g.edges, m))
    out = []
    for v, w in sorted(g.weights.items()):
        if w == 1 and v not in disc:
            out.append((v, sum((disc.get(u, Fraction(0)) for u in g.neighbors(v)), Fraction(0))))
    return out


# ---------------------------------------------------------------------------
# verification and coverage


@dataclass
class PhiPiReport:
    ok: bool
    route: str
    matrix: IncidenceMatrix | None = None
    diff: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)


def verify_phi_pi(M: IncidenceMatrix, X: StarSingularity, sp: StarPResolution) -> PhiPiReport:
    """Run the MMP on the synthesized resolution and compare with M canonically.

    Non-Wahl marks are first split into their M-resolution.
    """
    M = _as_star(M, X)
    res = sp.res
    route = "mmp"
    if not all(is_wahl(w) for w in res.mark_weights()):
        res = m_resolution(res)
        route = "mmp via M-resolution"
        if res is None:
            return PhiPiReport(False, route, diff={"error": "no M-resolution split found"})
    try:
        run = run_mmp(res, X.structure())
    except MMPError as exc:
        return PhiPiReport(False, route, diff={"error": str(exc)}, trace=[s.to_json() for s in exc.trace])
    got = run.matrix
    ok = canonical(got) == canonical(M)
    diff = {}
    if not ok:
        a, b = set(canonical(got).columns), set(canonical(M).columns)
        diff = {"only_in_mmp": sorted(a - b), "only_in_input": sorted(b - a)}
    return PhiPiReport(ok, route, got, diff)


@dataclass
class CoverageEntry:
    matrix: CanonicalForm
    status: str  # "ok" | "violation" | "miss" | "mismatch"
    case: str = ""
    detail: str = ""


@dataclass
class SurjectivityReport:
    X: StarSingularity
    entries: list[CoverageEntry]

    @property
    def total(self) -> int:
        return len(self.entries)

    @property
    def covered(self) -> int:
        return sum(e.status == "ok" for e in self.entries)

    @property
    def complete(self) -> bool:
        return self.covered == self.total

    def to_json(self) -> dict:
        return {
            "singularity": self.X.to_json(),
            "total": self.total,
            "covered": self.covered,
            "entries": [
                {"status": e.status, "case": e.case, "detail": e.detail, "rows": list(e.matrix.rows), "columns": [list(c) for c in e.matrix.columns]}
                for e in self.entries
            ],
        }

    def table(self) -> str:
        lines = [f"d={self.X.d} branches={self.X.branches}: {self.covered}/{self.total} covered"]
        for k, e in enumerate(self.entries, 1):
            lines.append(f"{k:>4}  {e.status:<9} {e.case:<7} {e.detail}")
        return "\n".join(lines)


def surjectivity_report(X: StarSingularity, depth: int = 3) -> SurjectivityReport:
    entries = []
    for cf in enumerate_all(X.data()):
        M = cf.matrix()
        try:
            tag = classify_case(M, X)
            sp = construct_presolution(M, X, tag, depth)
            rep = verify_phi_pi(M, X, sp)
            status = "ok" if rep.ok else "mismatch"
            entries.append(CoverageEntry(cf, status, tag.kind, json.dumps(rep.diff) if rep.diff else ""))
        except TheoremViolation as exc:
            entries.append(CoverageEntry(cf, "violation", "", str(exc)))
        except SynthesisError as exc:
            entries.append(CoverageEntry(cf, "miss", "", str(exc)))
    return SurjectivityReport(X, entries)


# ---------------------------------------------------------------------------
# brute force: every P-resolution of the star within a blow-up budget


def _simple_paths(g: DualGraph) -> list[tuple[str, ...]]:
    out = []

    def walk(path):
        out.append(tuple(path))
        for u in g.neighbors(path[-1]):
            if u not in path:
                walk(path + [u])

    for v in sorted(g.weights):
        walk([v])
    # a path and its reverse are the same chain
    return [p for p in out if p[0] <= p[-1]]


def _graph_key(g: DualGraph, origin: dict) -> tuple:
    import networkx as nx

    G = nx.Graph()
    for v, w in g.weights.items():
        G.add_node(v, tag=f"{w}:{origin.get(v) or '-'}")
    G.add_edges_from(tuple(e) for e in g.edges)
    return (nx.weisfeiler_lehman_graph_hash(G, node_attr="tag", iterations=4),)


def enumerate_star_presolutions(X: StarSingularity, depth: int = 2) -> list[PResolution]:
    """All P-resolutions reachable from the minimal resolution by at most
    ``depth`` blow-ups at intersection points.

    This ignores the Case A/B machinery entirely and serves as an
    independent check on it.
    """
    from .classt import is_class_t

    st = X.structure()
    base = st.base
    graphs = {_graph_key(base, {v: v for v in base.weights}): (base, {v: v for v in base.weights})}
    frontier = list(graphs.values())
    for _ in range(depth):
        nxt = []
        for g, origin in frontier:
            for e in sorted(sorted(e) for e in g.edges):
                h, new = g.blow_up_edge(e[0], e[1], g.fresh_id("E"))
                o = {**origin, new: None}
                key = _graph_key(h, o)
                if key not in graphs:
                    graphs[key] = (h, o)
                    nxt.append((h, o))
        frontier = nxt

    found = []
    for g, origin in graphs.values():
        paths = [p for p in _simple_paths(g) if is_class_t([g.weights[v] for v in p]) is not None]

        def choose(i, used, marks):
            if i == len(paths):
                res = PResolution(g, list(marks), origin)
                if ample_check(res).ample:
                    found.append(res)
                return
            choose(i + 1, used, marks)
            p = paths[i]
            near = set(p) | {u for v in p for u in g.neighbors(v)}
            if not near & used:
                choose(i + 1, used | set(p), marks + [p])

        choose(0, frozenset(), [])
    return found


def star_mmp_matrices(X: StarSingularity, depth: int = 2) -> dict[CanonicalForm, list[PResolution]]:
    """Canonical MMP matrix of every brute-force P-resolution."""
    st = X.structure()
    out: dict[CanonicalForm, list[PResolution]] = {}
    for res in enumerate_star_presolutions(X, depth):
        run = res if all(is_wahl(w) for w in res.mark_weights()) else m_resolution(res)
        if run is None:
            continue
        out.setdefault(canonical(run_mmp(run, st).matrix), []).append(res)
    return out
