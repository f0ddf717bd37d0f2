"""Incidence matrices: verification, canonical forms, enumeration, type tags."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .sandwich import CombinatorialData, SandwichedStructure


@dataclass
class IncidenceMatrix:
    rows: list[str]
    columns: list[tuple[int, ...]]
    provenance: str = ""

    @classmethod
    def from_rows(cls, rows: Sequence[str], data: Sequence[Sequence[int]], provenance: str = "") -> "IncidenceMatrix":
        data = [list(r) for r in data]
        ncol = len(data[0]) if data else 0
        if any(len(r) != ncol for r in data):
            raise ValueError("ragged matrix")
        cols = [tuple(r[j] for r in data) for j in range(ncol)]
        return cls(list(rows), cols, provenance)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    def row(self, label: str) -> list[int]:
        i = self.rows.index(label)
        return [c[i] for c in self.columns]

    def as_rows(self) -> list[list[int]]:
        return [[c[i] for c in self.columns] for i in range(len(self.rows))]

    def support(self, j: int) -> set[str]:
        return {lab for lab, x in zip(self.rows, self.columns[j]) if x}

    def restrict(self, rows: Sequence[str], drop_empty: bool = True) -> "IncidenceMatrix":
        idx = [self.rows.index(r) for r in rows]
        cols = [tuple(c[i] for i in idx) for c in self.columns]
        if drop_empty:
            cols = [c for c in cols if any(c)]
        return IncidenceMatrix(list(rows), cols, self.provenance)

    def reorder(self, rows: Sequence[str]) -> "IncidenceMatrix":
        return self.restrict(rows, drop_empty=False)

    def canonical(self) -> "CanonicalForm":
        return canonical(self)

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "matrix": self.as_rows(), "provenance": self.provenance}

    def to_csv(self) -> str:
        lines = ["row," + ",".join(f"p{j + 1}" for j in range(len(self.columns)))]
        for lab, r in zip(self.rows, self.as_rows()):
            lines.append(f'"{lab}",' + ",".join(map(str, r)))
        return "\n".join(lines) + "\n"

    def pretty(self) -> str:
        w = max((len(r) for r in self.rows), default=1)
        return "\n".join(f"{lab:>{w}} | " + " ".join(str(x) for x in r) for lab, r in zip(self.rows, self.as_rows()))


@dataclass(frozen=True)
class CanonicalForm:
    rows: tuple[str, ...]
    columns: tuple[tuple[int, ...], ...]

    def matrix(self, provenance: str = "") -> IncidenceMatrix:
        return IncidenceMatrix(list(self.rows), list(self.columns), provenance)


def canonical(M: IncidenceMatrix) -> CanonicalForm:
    # descending as binary strings read from the first row
    cols = sorted((tuple(c) for c in M.columns), reverse=True)
    return CanonicalForm(tuple(M.rows), tuple(cols))


@dataclass
class VerifyReport:
    ok: bool
    violations: list[str] = field(default_factory=list)


def verify(M: IncidenceMatrix, data: CombinatorialData) -> VerifyReport:
    if list(M.rows) != list(data.labels):
        if sorted(M.rows) != sorted(data.labels):
            raise ValueError(f"row labels {M.rows} do not match {data.labels}")
        M = M.reorder(data.labels)
    rep = VerifyReport(True)
    rows = M.as_rows()
    labs = M.rows
    if any(not any(c) for c in M.columns):
        rep.violations.append("zero column")
    for lab, r in zip(labs, rows):
        if any(x < 0 for x in r):
            rep.violations.append(f"negative entry in {lab}")
        dl = sum(x * (x - 1) // 2 for x in r)
        if dl != data.delta[lab]:
            rep.violations.append(f"delta({lab}) = {dl} != {data.delta[lab]}")
        if sum(r) != data.lengths[lab]:
            rep.violations.append(f"l({lab}) = {sum(r)} != {data.lengths[lab]}")
    for i in range(len(labs)):
        for k in range(i + 1, len(labs)):
            ip = sum(x * y for x, y in zip(rows[i], rows[k]))
            want = data.p(labs[i], labs[k])
            if ip != want:
                rep.violations.append(f"{labs[i]}.{labs[k]} = {ip} != {want}")
    rep.ok = not rep.violations
    return rep


def enumerate_all(data: CombinatorialData, limit: int | None = None) -> list[CanonicalForm]:
    """All 0/1 matrices meeting the equations, up to column permutation.

    Rows are filled one at a time.  Columns that agree on the rows placed so
    far are interchangeable, so for each such class only the number of
    columns receiving a 1 is chosen; this never produces the same matrix
    twice up to column order.
    """
    if any(v != 0 for v in data.delta.values()):
        raise NotImplementedError("only delta = 0 (0/1 entries) is supported")
    labels = data.labels
    s = len(labels)
    L = [data.lengths[x] for x in labels]
    P = [[0 if i == k else data.p(labels[i], labels[k]) for k in range(s)] for i in range(s)]
    out: list[CanonicalForm] = []

    # classes: list of (frozenset of rows containing the column, multiplicity)
    def rec(i: int, classes: list[tuple[tuple[int, ...], int]]) -> bool:
        if i == s:
            cols = []
            for pat, mult in classes:
                col = tuple(1 if r in pat else 0 for r in range(s))
                cols.extend([col] * mult)
            out.append(canonical(IncidenceMatrix(list(labels), cols)))
            return limit is not None and len(out) >= limit
        # rows k < i constrain: sum over classes containing k of chosen = P[i][k]
        need = P[i][:i]
        results = []

        def choose(ci: int, chosen: list[int], acc: list[int], total: int) -> None:
            if total > L[i]:
                return
            if ci == len(classes):
                if acc == need:
                    results.append(list(chosen))
                return
            pat, mult = classes[ci]
            for c in range(0, mult + 1):
                ok = True
                for k in pat:
                    if acc[k] + c > need[k]:
                        ok = False
                        break
                if not ok:
                    break
                for k in pat:
                    acc[k] += c
                chosen.append(c)
                choose(ci + 1, chosen, acc, total + c)
                chosen.pop()
                for k in pat:
                    acc[k] -= c

        choose(0, [], [0] * i, 0)
        for chosen in results:
            new = L[i] - sum(chosen)
            nxt = []
            for (pat, mult), c in zip(classes, chosen):
                if c:
                    nxt.append((pat + (i,), c))
                if mult - c:
                    nxt.append((pat, mult - c))
            if new:
                nxt.append(((i,), new))
            if rec(i + 1, nxt):
                return True
        return False

    rec(0, [])
    return sorted(set(out), key=lambda f: f.columns, reverse=True)


def free_points(M: IncidenceMatrix, label: str) -> int:
    i = M.rows.index(label)
    return sum(1 for c in M.columns if c[i] and sum(1 for x in c if x) == 1)


def has_all_ones_column(M: IncidenceMatrix) -> bool:
    return any(all(c) for c in M.columns)


@dataclass
class TypeTag:
    kind: str  # "Type1" | "Type2_1" | "Type2_2" | "unclassified"
    first_branch: int | None = None
    e: int | None = None
    degenerating: list[str] = field(default_factory=list)
    q_columns: list[int] = field(default_factory=list)
    stair: list[list[str]] = field(default_factory=list)
    p0: int | None = None
    note: str = ""


def _branch_rows(st: SandwichedStructure) -> tuple[list[list[str]], list[str]]:
    arms = []
    for arm in st.branches:
        arms.append([lab for v, lab in st.attach if v in arm])
    d_rows = [lab for v, lab in st.attach if v == st.central]
    return arms, d_rows


def locate_p0(M: IncidenceMatrix, d_rows: Sequence[str]) -> list[int]:
    """Columns containing every D row; with one D row this can be ambiguous."""
    if not d_rows:
        return []
    idx = [M.rows.index(r) for r in d_rows]
    return [j for j, c in enumerate(M.columns) if all(c[i] for i in idx)]


def q_structure(M: IncidenceMatrix, degenerating: Sequence[str], partner: Sequence[str]):
    """Columns shared by degenerating rows and partner rows, and their blocks."""
    deg = set(degenerating)
    part = set(partner)
    qs = [j for j in range(len(M.columns)) if M.support(j) & deg and M.support(j) & part]
    blocks = [sorted(M.support(j) & deg, key=list(degenerating).index) for j in qs]
    return qs, blocks


def _type2(M, arm1, arm2, d_rows, p0) -> TypeTag:
    inside = M.support(p0)
    deg = [r for r in arm1 if r not in inside]
    if any(r not in inside for r in arm2) or any(r not in inside for r in d_rows):
        return TypeTag("unclassified", note="p0 misses rows outside the first branch")
    if not deg:
        return TypeTag("Type1", p0=p0)
    # degenerating rows are the outermost leaves of the branch
    e = arm1.index(deg[0]) + 1
    if deg != arm1[e - 1:]:
        return TypeTag("unclassified", note="degenerating rows are not a tail of the branch")
    qs, blocks = q_structure(M, deg, arm2)
    tag = TypeTag("unclassified", e=e, degenerating=deg, q_columns=qs, p0=p0)
    if qs and all(set(b) == set(deg) for b in blocks):
        tag.kind = "Type2_2"
        return tag
    flat = [r for b in blocks for r in b]
    if len(qs) >= 2 and sorted(flat, key=deg.index) == deg and len(flat) == len(set(flat)):
        # stair shape: blocks are consecutive runs of the degenerating rows
        pos = [[deg.index(r) for r in b] for b in blocks]
        if all(p == list(range(p[0], p[0] + len(p))) for p in pos):
            tag.kind = "Type2_1"
            tag.stair = [list(b) for b in sorted(blocks, key=lambda b: deg.index(b[0]))]
            return tag
    tag.note = "q-columns fit neither the stair nor the full-column pattern"
    return tag


def classify_cqss_type(M: IncidenceMatrix, st: SandwichedStructure, first_branch: int = 1) -> TypeTag:
    """Type of a matrix on a two-branch (chain with central curve) structure.

    The degenerating rows are the rows missing from p0.  When a single D row
    leaves p0 ambiguous, the designated first branch is tried first.
    """
    arms, d_rows = _branch_rows(st)
    if len(arms) != 2:
        raise ValueError("two-branch structure expected")
    if has_all_ones_column(M):
        j = next(j for j, c in enumerate(M.columns) if all(c))
        return TypeTag("Type1", first_branch=first_branch, p0=j)
    order = [first_branch, 3 - first_branch]
    tries = []
    for b in order:
        a1, a2 = arms[b - 1], arms[2 - b]
        for p0 in locate_p0(M, d_rows):
            tag = _type2(M, a1, a2, d_rows, p0)
            tag.first_branch = b
            if tag.kind != "unclassified":
                return tag
            tries.append(tag)
    return tries[0] if tries else TypeTag("unclassified", note="no column contains all D rows")


def rows_of(M: IncidenceMatrix) -> list[list[int]]:
    return M.as_rows()


def column_multiset(cols: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    return sorted((tuple(c) for c in cols), reverse=True)
