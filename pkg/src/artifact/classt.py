"""Class-T and Wahl chains, delta sequences, discrepancies and ampleness."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .cfrac import to_fraction
from .graph import PResolution


@dataclass(frozen=True)
class TChainCertificate:
    chain: tuple[int, ...]
    d: int
    n: int
    a: int
    # base chain, then moves "R" = [a1+1, ..., 2] and "L" = [2, ..., ar+1]
    base: tuple[int, ...]
    moves: tuple[str, ...]

    @property
    def is_wahl(self) -> bool:
        return self.d == 1


def _is_base(chain: Sequence[int]) -> int | None:
    """Return d for a base chain [4] (d=1) or [3,2,...,2,3] (d=#twos+2)."""
    c = list(chain)
    if c == [4]:
        return 1
    if len(c) >= 2 and c[0] == 3 and c[-1] == 3 and all(x == 2 for x in c[1:-1]):
        return len(c)
    return None


def _reduce(chain: Sequence[int]) -> tuple[tuple[int, ...], list[str]] | None:
    c = list(chain)
    moves: list[str] = []
    while _is_base(c) is None:
        if len(c) < 2:
            return None
        if c[-1] == 2 and c[0] >= 3:
            c = [c[0] - 1] + c[1:-1]
            moves.append("R")
        elif c[0] == 2 and c[-1] >= 3:
            c = c[1:-1] + [c[-1] - 1]
            moves.append("L")
        else:
            return None
    return tuple(c), moves[::-1]


def apply_moves(base: Sequence[int], moves: Sequence[str]) -> list[int]:
    c = list(base)
    for m in moves:
        if m == "R":
            c = [c[0] + 1] + c[1:] + [2]
        else:
            c = [2] + c[:-1] + [c[-1] + 1]
    return c


def is_class_t(chain: Sequence[int]) -> TChainCertificate | None:
    chain = tuple(chain)
    if not chain or any(x < 2 for x in chain):
        return None
    red = _reduce(chain)
    if red is None:
        return None
    base, moves = red
    d = _is_base(base)
    num, den = to_fraction(chain)
    n = isqrt(num // d)
    if d * n * n != num or (den + 1) % (d * n):
        raise AssertionError(f"class-T reduction of {chain} disagrees with its value")
    a = (den + 1) // (d * n)
    return TChainCertificate(chain, d, n, a, base, tuple(moves))


def is_wahl(chain: Sequence[int]) -> bool:
    cert = is_class_t(chain)
    return cert is not None and cert.is_wahl


def enumerate_wahl(max_len: int) -> set[tuple[int, ...]]:
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    layer = {(4,)}
    out = set(layer)
    for _ in range(max_len - 1):
        layer = {tuple(apply_moves(c, m)) for c in layer for m in ("R", "L")}
        out |= layer
    return out


def enumerate_class_t(max_len: int) -> set[tuple[int, ...]]:
    bases = [(4,)] + [(3,) + (2,) * k + (3,) for k in range(max_len - 1)]
    out = set()
    for b in bases:
        layer = {b}
        while layer:
            layer = {c for c in layer if len(c) <= max_len}
            out |= layer
            layer = {tuple(apply_moves(c, m)) for c in layer for m in ("R", "L")}
    return out


def delta_sequence(chain: Sequence[int]) -> tuple[int, ...]:
    cert = is_class_t(chain)
    if cert is None or not cert.is_wahl:
        raise ValueError(f"{list(chain)} is not a Wahl chain")
    delta = [1]
    for m in cert.moves:
        s = delta[0] + delta[-1]
        delta = delta + [s] if m == "R" else [s] + delta
    return tuple(delta)


def discrepancies(chain: Sequence[int]) -> tuple[Fraction, ...]:
    delta = delta_sequence(chain)
    tot = delta[0] + delta[-1]
    return tuple(Fraction(x, tot) - 1 for x in delta)


def solve_linear(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Exact Gauss-Jordan elimination; raises on a singular system."""
    n = len(b)
    M = [list(map(Fraction, row)) + [Fraction(rhs)] for row, rhs in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError("singular system")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def discrepancies_adjunction(chain: Sequence[int]) -> tuple[Fraction, ...]:
    """Solve m_{i-1} - a_i m_i + m_{i+1} = a_i - 2 along the chain."""
    r = len(chain)
    A = [[Fraction(0)] * r for _ in range(r)]
    for i, a in enumerate(chain):
        A[i][i] = Fraction(-a)
        if i > 0:
            A[i][i - 1] = Fraction(1)
        if i < r - 1:
            A[i][i + 1] = Fraction(1)
    return tuple(solve_linear(A, [Fraction(a - 2) for a in chain]))


def discrepancies_graph(weights: dict[str, int], edges: set[frozenset], curves: Sequence[str]) -> dict[str, Fraction]:
    """Discrepancies of a connected set of curves inside a larger graph."""
    curves = list(curves)
    idx = {v: i for i, v in enumerate(curves)}
    A = [[Fraction(0)] * len(curves) for _ in curves]
    for v, i in idx.items():
        A[i][i] = Fraction(-weights[v])
    for e in edges:
        u, v = tuple(e)
        if u in idx and v in idx:
            A[idx[u]][idx[v]] += 1
            A[idx[v]][idx[u]] += 1
    sol = solve_linear(A, [Fraction(weights[v] - 2) for v in curves])
    return dict(zip(curves, sol))


@dataclass
class AmpleReport:
    ample: bool
    values: dict[str, Fraction] = field(default_factory=dict)
    exempt: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)


def ample_check(res: PResolution) -> AmpleReport:
    """K.E for every unmarked curve E, computed on the partially contracted surface.

    Unmarked (-2)-curves are treated as rational double points and only
    reported; every other unmarked curve needs K.E > 0.
    """
    g = res.graph
    seen: set[str] = set()
    for m in res.marks:
        if seen & set(m):
            raise ValueError("marked chains overlap")
        seen |= set(m)
        if is_class_t([g.weights[v] for v in m]) is None:
            raise ValueError(f"mark {m} is not a class-T chain")
    disc: dict[str, Fraction] = {}
    for m in res.marks:
        disc.update(discrepancies_graph(g.weights, g.edges, m))
    rep = AmpleReport(True)
    for v in sorted(g.weights):
        if v in seen:
            continue
        w = g.weights[v]
        k = Fraction(w - 2) - sum((disc[u] for u in g.neighbors(v) if u in disc), Fraction(0))
        rep.values[v] = k
        if w == 2 and k == 0:
            rep.exempt.append(v)
        elif k <= 0:
            rep.ample = False
            rep.failures.append(v)
    return rep


def bound_checks(chain: Sequence[int]) -> dict[str, str]:
    """Evaluate the known discrepancy bounds; each entry is pass, fail or n/a."""
    chain = list(chain)
    m = discrepancies(chain)
    r = len(chain)
    out: dict[str, str] = {}

    # Urzua-Vilches split for chains ending in 2: type M has a_2 = ... = a_r = 2
    if r >= 2 and chain[-1] == 2:
        out["uv_type"] = "M" if all(x == 2 for x in chain[1:]) else "B"
    elif r >= 2 and chain[0] == 2:
        out["uv_type"] = "M" if all(x == 2 for x in chain[:-1]) else "B"
    else:
        out["uv_type"] = "n/a"
    out["range"] = "pass" if all(-1 < x < 0 for x in m) else "fail"
    out["ends_sum"] = "pass" if m[0] + m[-1] == -1 or r == 1 else "fail"

    if chain[0] >= 3 and r >= 2:
        a = chain[0]
        out["head"] = "pass" if m[0] < Fraction(2 - a, a - 1) else "fail"
    else:
        out["head"] = "n/a"

    n = 0
    while n < r and chain[n] == 2:
        n += 1
    if 1 <= n and n + 1 < r:
        out["leading_twos"] = "pass" if m[0] < Fraction(-1, n + 2) else "fail"
    else:
        out["leading_twos"] = "n/a"

    interior = [t for t in range(1, r - 1) if chain[t] >= 5]
    if interior:
        ok = all(m[t] <= Fraction(1 - chain[t], chain[t]) for t in interior)
        out["interior"] = "pass" if ok else "fail"
    else:
        out["interior"] = "n/a"
    return out
