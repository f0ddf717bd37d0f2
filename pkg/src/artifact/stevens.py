"""Polygon triangulations, Stevens sequences and the NPP incidence matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .cfrac import enumerate_K_bounded, hj_dual, hj_expand
from .incidence import IncidenceMatrix
from .sandwich import usual_sandwich_cqss

Triangle = tuple[int, int, int]


@dataclass(frozen=True)
class Triangulation:
    """Triangulation of the polygon b_1, ..., b_s, N (counterclockwise).

    Vertices are 1..s and N is encoded as s+1.
    """

    s: int
    triangles: frozenset

    @property
    def N(self) -> int:
        return self.s + 1

    def ordered(self) -> list[Triangle]:
        return sorted(self.triangles, key=lambda t: triangle_key(t, self.s))

    def to_json(self) -> list[list[str]]:
        return [[("N" if v == self.N else f"b{v}") for v in t] for t in self.ordered()]


def _triangulate(verts: tuple[int, ...]) -> list[frozenset]:
    if len(verts) < 3:
        return [frozenset()]
    out = []
    a, b = verts[0], verts[-1]
    for k in range(1, len(verts) - 1):
        t = tuple(sorted((a, verts[k], b)))
        for left in _triangulate(verts[: k + 1]):
            for right in _triangulate(verts[k:]):
                out.append(left | right | {t})
    return out


@lru_cache(maxsize=None)
def triangulations(s: int) -> tuple[Triangulation, ...]:
    if s < 1:
        raise ValueError("s must be >= 1")
    verts = tuple(range(1, s + 2))
    tris = _triangulate(verts) if s >= 2 else [frozenset()]
    return tuple(sorted((Triangulation(s, t) for t in tris), key=lambda T: sorted(T.triangles)))


def tri_to_k(theta: Triangulation) -> tuple[int, ...]:
    return tuple(sum(1 for t in theta.triangles if v in t) for v in range(1, theta.s + 1))


def k_to_tri(k: Sequence[int]) -> Triangulation:
    """Rebuild the triangulation by cutting off ears at named vertices with count 1."""
    s = len(k)
    if s < 2:
        raise ValueError("no triangulation for s < 2")
    cnt = {v: k[v - 1] for v in range(1, s + 1)}
    poly = list(range(1, s + 2))
    N = s + 1
    tris = set()
    while len(poly) > 3:
        ear = next((i for i, v in enumerate(poly) if v != N and cnt[v] == 1), None)
        if ear is None:
            raise ValueError(f"{tuple(k)} is not in K_{s}")
        v = poly[ear]
        a, b = poly[ear - 1], poly[(ear + 1) % len(poly)]
        tris.add(tuple(sorted((a, v, b))))
        for u in (a, b):
            if u != N:
                cnt[u] -= 1
                if cnt[u] < 1:
                    raise ValueError(f"{tuple(k)} is not in K_{s}")
        cnt[v] = 0
        poly.pop(ear)
    if any(cnt[v] != 1 for v in poly if v != N):
        raise ValueError(f"{tuple(k)} is not in K_{s}")
    tris.add(tuple(sorted(poly)))
    theta = Triangulation(s, frozenset(tris))
    if tri_to_k(theta) != tuple(k):
        raise ValueError(f"{tuple(k)} is not in K_{s}")
    return theta


def triangle_key(t: Triangle, s: int) -> tuple:
    """Order by the smallest boundary edge the triangle uses.

    Edge (b_i, b_{i+1}) has index i, (b_s, N) has index s and (N, b_1) has
    index s+1.  Triangles with no boundary edge come last.
    """
    N = s + 1
    idx = []
    vs = set(t)
    for i in range(1, s):
        if {i, i + 1} <= vs:
            idx.append(i)
    if {s, N} <= vs:
        idx.append(s)
    if {N, 1} <= vs:
        idx.append(s + 1)
    return (min(idx) if idx else s + 2, tuple(sorted(t)))


def alpha(i: int, t: Triangle, s: int) -> int:
    named = sorted(v for v in t if v != s + 1)
    if i not in named:
        return 0
    return -1 if len(named) >= 2 and named.index(i) == 1 else 1


def D_k(theta: Triangulation) -> list[tuple[int, ...]]:
    return [tuple(alpha(i, t, theta.s) for i in range(1, theta.s + 1)) for t in theta.ordered()]


def npp_incidence(b: Sequence[int], k: Sequence[int] | None, theta: Triangulation | None) -> IncidenceMatrix:
    """Row-integrated D(b;k); k=None stands for the s = 1 case with no triangles."""
    s = len(b)
    k = tuple(k) if k is not None else (0,) * s
    if any(ki > bi for ki, bi in zip(k, b)):
        raise ValueError(f"k={k} exceeds b={tuple(b)}")
    cols: list[tuple[int, ...]] = []
    if theta is not None:
        if tri_to_k(theta) != k:
            raise ValueError("triangulation does not match k")
        cols.extend(D_k(theta))
    for i in range(s):
        cols.extend([tuple(1 if r == i else 0 for r in range(s))] * (b[i] - k[i]))
    integ = []
    for c in cols:
        acc, out = 0, []
        for x in c:
            acc += x
            out.append(acc)
        integ.append(tuple(out))
    return IncidenceMatrix([f"C{i + 1}" for i in range(s)], integ, "NPP")


@dataclass
class PResolutionCQSS:
    n: int
    q: int
    k: tuple[int, ...] | None
    theta: Triangulation | None
    chain: tuple[int, ...]
    b: tuple[int, ...]
    matrix: IncidenceMatrix
    note: str = ""
    realization: object = field(default=None, repr=False)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "q": self.q,
            "chain": list(self.chain),
            "b": list(self.b),
            "k": list(self.k) if self.k is not None else None,
            "triangulation": self.theta.to_json() if self.theta else [],
            "matrix": self.matrix.as_rows(),
        }
        if self.note:
            out["note"] = self.note
        if self.realization is not None:
            out["graph"] = self.realization.to_json()
        return out


def p_resolutions_cqss(n: int, q: int) -> list[PResolutionCQSS]:
    chain = tuple(hj_expand(n, q))
    b = tuple(hj_dual(chain))
    if len(b) == 1:
        # K_1 is empty; the only P-resolution is the minimal resolution
        m = npp_incidence(b, None, None)
        return [PResolutionCQSS(n, q, None, None, chain, b, m, note="minimal only (s = 1)")]
    out = []
    for k in sorted(enumerate_K_bounded(b)):
        theta = k_to_tri(k)
        out.append(PResolutionCQSS(n, q, k, theta, chain, b, npp_incidence(b, k, theta)))
    return out


def usual_structure_for(n: int, q: int):
    return usual_sandwich_cqss(hj_expand(n, q))



class RealizationMiss(LookupError):
    pass


def _blown_up_chains(chain: Sequence[int], depth: int) -> list[list[tuple[int, str | None]]]:
    """Chains obtained by at most ``depth`` blow-ups at nodes, as (weight, origin) lists."""
    start = [(w, f"A{i + 1}") for i, w in enumerate(chain)]
    seen = {tuple(start)}
    layer = [start]
    out = [start]
    for _ in range(depth):
        nxt = []
        for c in layer:
            for j in range(len(c) - 1):
                (wu, ou), (wv, ov) = c[j], c[j + 1]
                new = c[:j] + [(wu + 1, ou), (1, None), (wv + 1, ov)] + c[j + 2:]
                key = tuple(new)
                if key not in seen:
                    seen.add(key)
                    nxt.append(new)
        out.extend(nxt)
        layer = nxt
    return out


@lru_cache(maxsize=None)
def _class_t(w: tuple[int, ...]) -> bool:
    from .classt import is_class_t

    return is_class_t(w) is not None


def _markings(w: list[int]) -> list[list[tuple[int, int]]]:
    """Disjoint, pairwise non-adjacent class-T intervals with every (-1) between two of them."""
    r = len(w)
    tint = {}
    for a in range(r):
        for b in range(a, r):
            if w[b] == 1:
                break
            if _class_t(tuple(w[a:b + 1])):
                tint.setdefault(a, []).append(b)
    out = []

    def rec(p: int, acc: list[tuple[int, int]], prev_marked: bool) -> None:
        if p >= r:
            out.append(list(acc))
            return
        if w[p] == 1:
            # a (-1) must sit between two marked ends
            if not prev_marked or p + 1 >= r:
                return
            for b in tint.get(p + 1, []):
                acc.append((p + 1, b))
                rec(b + 1, acc, True)
                acc.pop()
            return
        rec(p + 1, acc, False)
        if not prev_marked:
            for b in tint.get(p, []):
                acc.append((p, b))
                rec(b + 1, acc, True)
                acc.pop()

    rec(0, [], False)
    return out


def enumerate_chain_presolutions(chain: Sequence[int], depth: int = 3) -> list:
    """All P-resolutions of the chain reachable with at most ``depth`` node blow-ups."""
    from .classt import ample_check
    from .graph import DualGraph, PResolution

    found = []
    for c in _blown_up_chains(chain, depth):
        w = [x for x, _ in c]
        if w[0] == 1 or w[-1] == 1:
            continue
        for marking in _markings(w):
            ids, k = [], 0
            for _, o in c:
                if o is None:
                    k += 1
                    ids.append(f"E{k}")
                else:
                    ids.append(o)
            g = DualGraph(dict(zip(ids, w)), {frozenset(p) for p in zip(ids, ids[1:])}, shape="chain")
            marks = [tuple(ids[a:b + 1]) for a, b in marking]
            res = PResolution(g, marks, {v: o for v, (_, o) in zip(ids, c)})
            if ample_check(res).ample:
                found.append(res)
    return found


def realize_all(n: int, q: int, depth: int = 3) -> list[PResolutionCQSS]:
    """Attach a marked graph to every descriptor of 1/n(1,q).

    Each resolution is matched through the MMP matrix of its M-resolution
    (itself when all marks are Wahl); anything left over is matched by
    elimination when that is unambiguous.
    """
    from .classt import is_wahl
    from .incidence import canonical
    from .mmp import run_mmp

    descs = p_resolutions_cqss(n, q)
    st = usual_structure_for(n, q)
    resols = enumerate_chain_presolutions(descs[0].chain, depth)
    by_can = {canonical(d.matrix): d for d in descs}
    left = []
    for res in resols:
        target = res if all(is_wahl(ws) for ws in res.mark_weights()) else m_resolution(res)
        if target is not None:
            d = by_can.get(canonical(run_mmp(target, st).matrix))
            if d is None:
                raise RealizationMiss(f"MMP matrix of {res.to_json()} matches no descriptor")
            if d.realization is not None:
                raise RealizationMiss(f"two resolutions realize k={d.k}")
            d.realization = res
        else:
            left.append(res)
    open_ = [d for d in descs if d.realization is None]
    if len(open_) == 1 and len(left) == 1:
        open_[0].realization = left[0]
        open_[0].note = (open_[0].note + "; " if open_[0].note else "") + "matched by elimination"
    return descs


def realize_presolution(desc: PResolutionCQSS, depth: int = 3):
    if desc.realization is not None:
        return desc.realization
    for d in realize_all(desc.n, desc.q, depth):
        if d.k == desc.k:
            if d.realization is None:
                raise RealizationMiss(f"k={desc.k} of {desc.n}/{desc.q} not realized within depth {depth}")
            desc.realization = d.realization
            return d.realization
    raise RealizationMiss(f"k={desc.k} is not a descriptor of {desc.n}/{desc.q}")


def _contract_to(c: list[int], target: list[int]) -> list[int | None] | None:
    """Blow down interior (-1)-curves of ``c`` until ``target`` remains.

    Returns, for each entry of ``c``, the index in ``target`` it becomes
    (None for contracted curves), or None if the result differs.
    """
    ws = list(c)
    alive = list(range(len(c)))
    while len(ws) > len(target):
        j = next((j for j in range(1, len(ws) - 1) if ws[j] == 1), None)
        if j is None:
            return None
        ws[j - 1] -= 1
        ws[j + 1] -= 1
        del ws[j], alive[j]
    if ws != list(target):
        return None
    pos: list[int | None] = [None] * len(c)
    for k, j in enumerate(alive):
        pos[j] = k
    return pos


def _direct_split(w: list[int]):
    """d copies of the Wahl chain joined by (-1)-curves, read off the certificate."""
    from .cfrac import hj_expand
    from .classt import is_class_t

    cert = is_class_t(w)
    if cert is None or cert.d < 2:
        return None
    wahl = hj_expand(cert.n * cert.n, cert.n * cert.a - 1)
    for unit in (wahl, wahl[::-1]):
        c, marking = [], []
        for k in range(cert.d):
            if k:
                c.append(1)
            marking.append((len(c), len(c) + len(unit) - 1))
            c.extend(unit)
        pos = _contract_to(c, w)
        if pos is not None:
            return [(x, None if p is None else f"A{p + 1}") for x, p in zip(c, pos)], marking
    return None


def _split_class_t(w: list[int], max_depth: int):
    """Blow-ups of a class-T chain into Wahl chains joined by K-trivial (-1)-curves."""
    from fractions import Fraction

    from .classt import discrepancies_graph, is_wahl

    direct = _direct_split(list(w))
    if direct is not None:
        return direct
    for depth in range(1, max_depth + 1):
        for c in _blown_up_chains(w, depth):
            if all(o is not None for _, o in c):
                continue
            ws = [x for x, _ in c]
            for marking in _markings(ws):
                covered = {j for a, b in marking for j in range(a, b + 1)}
                if any(ws[j] != 1 and j not in covered for j in range(len(ws))):
                    continue
                if not all(is_wahl(ws[a:b + 1]) for a, b in marking):
                    continue
                ids = [f"v{j}" for j in range(len(ws))]
                edges = {frozenset(p) for p in zip(ids, ids[1:])}
                disc = {}
                for a, b in marking:
                    disc.update(discrepancies_graph(dict(zip(ids, ws)), edges, ids[a:b + 1]))
                ok = True
                for j, x in enumerate(ws):
                    if x == 1:
                        k = Fraction(-1) - disc.get(ids[j - 1], 0) - disc.get(ids[j + 1], 0)
                        ok = ok and k == 0
                if ok:
                    return c, marking
    return None


def m_resolution(res):
    """Replace every class-T mark with d >= 2 by Wahl chains joined by K-trivial (-1)-curves.

    Works on any graph: curves outside a split mark stay attached to the
    strict transform of the curve they met.  Returns None when no split is
    found within the search bound.
    """
    from .classt import is_class_t
    from .graph import PResolution

    g = res.graph.copy()
    origin = dict(res.origin)
    marks: list[tuple[str, ...]] = []
    k = 0
    for m in res.marks:
        sw = [g.weights[u] for u in m]
        cert = is_class_t(sw)
        if cert.is_wahl:
            marks.append(tuple(m))
            continue
        split = _split_class_t(sw, 2 * (cert.d - 1))
        if split is None:
            return None
        c, marking = split
        names = {f"A{j + 1}": u for j, u in enumerate(m)}
        for a, b in zip(m, m[1:]):
            g.edges.discard(frozenset((a, b)))
        ids = []
        for w, o in c:
            if o is None:
                k += 1
                while f"M{k}" in g.weights:
                    k += 1
                v = f"M{k}"
                origin[v] = None
            else:
                v = names[o]
            g.weights[v] = w
            ids.append(v)
        g.edges |= {frozenset(p) for p in zip(ids, ids[1:])}
        marks.extend(tuple(ids[a:b + 1]) for a, b in marking)
    return PResolution(g, marks, origin, label="M-resolution")
