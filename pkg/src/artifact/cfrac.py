"""Hirzebruch-Jung continued fractions and Stevens' zero sequences K_s."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class _Infinity:
    """Marker for 1/0 in right-to-left evaluation."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"


INF = _Infinity()


def hj_eval(entries: Iterable[int]):
    """Evaluate [a_1, ..., a_r] = a_1 - 1/(a_2 - ...) exactly.

    Returns a Fraction, or INF when the outermost step divides by zero.
    A zero denominator in the middle turns into INF and then 1/INF = 0.
    """
    seq = list(entries)
    if not seq:
        return INF
    val = Fraction(seq[-1])
    for a in reversed(seq[:-1]):
        if val is INF:
            val = Fraction(a)
        elif val == 0:
            val = INF
            # a - 1/0: the whole value is infinite regardless of a
        else:
            val = a - 1 / val
    return val


def hj_expand(n: int, q: int) -> list[int]:
    if not (0 < q < n):
        raise ValueError(f"need 0 < q < n, got n={n}, q={q}")
    if gcd(n, q) != 1:
        raise ValueError(f"n={n} and q={q} are not coprime")
    out = []
    while q:
        a = -(-n // q)  # ceiling
        out.append(a)
        n, q = q, a * q - n
    return out


def to_fraction(entries: Sequence[int]) -> tuple[int, int]:
    """Return (n, q) with n/q = [entries]."""
    v = hj_eval(entries)
    if v is INF:
        raise ValueError(f"{list(entries)} does not evaluate to a finite value")
    return v.numerator, v.denominator


def hj_dual(entries: Sequence[int]) -> list[int]:
    seq = list(entries)
    if not seq:
        return []
    if any(a < 2 for a in seq):
        raise ValueError("dual is defined for entries >= 2")
    n, q = to_fraction(seq)
    return hj_expand(n, n - q)


def minors(k: Sequence[int]) -> list[int]:
    """Leading principal minors d_1..d_s of the tridiagonal matrix M(k)."""
    out = []
    prev, cur = 1, None
    for j, kj in enumerate(k):
        if j == 0:
            cur = kj
        else:
            prev, cur = cur, kj * cur - prev
        out.append(cur)
    return out


def is_admissible(k: Sequence[int]) -> bool:
    if not k or any(x < 1 for x in k):
        return False
    d = minors(k)
    if any(x < 0 for x in d):
        return False
    zeros = [j for j, x in enumerate(d) if x == 0]
    if not zeros:
        return True
    return zeros == [len(d) - 1] and (len(d) == 1 or d[-2] > 0)


def _zero_sequences(bounds: Sequence[int]) -> list[tuple[int, ...]]:
    """DFS over k_i <= bounds[i]: all prefix minors positive, last one zero."""
    s = len(bounds)
    found: list[tuple[int, ...]] = []
    if s < 2:
        return found

    def rec(prefix: list[int], d_prev: int, d_cur: int) -> None:
        j = len(prefix)
        if j == s:
            return
        for kj in range(1, bounds[j] + 1):
            d_new = kj * d_cur - d_prev
            if j == s - 1:
                if d_new == 0:
                    found.append(tuple(prefix + [kj]))
                continue
            if d_new <= 0:
                continue
            rec(prefix + [kj], d_cur, d_new)

    rec([], 0, 1)
    return found


def enumerate_K(s: int) -> set[tuple[int, ...]]:
    """K_s: admissible positive sequences of length s with value zero."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return enumerate_K_inductive(s)


def enumerate_K_naive(s: int) -> set[tuple[int, ...]]:
    """Same set by bounded search over the definition (slow; used as a cross-check)."""
    if s < 1:
        raise ValueError("s must be >= 1")
    # a vertex of an (s+1)-gon lies in at most s-1 triangles
    return set(_zero_sequences([max(1, s - 1)] * s))


def enumerate_K_bounded(b: Sequence[int]) -> set[tuple[int, ...]]:
    if any(x < 2 for x in b):
        raise ValueError("bounds must be >= 2")
    return set(_zero_sequences(list(b)))


def enumerate_K_inductive(s: int) -> set[tuple[int, ...]]:
    """Insert a 1 between two neighbours and bump both.

    At the two ends the unnamed polygon vertex is the other neighbour, and
    its count is not recorded.
    """
    if s < 2:
        return set()
    layer = {(1, 1)}
    for _ in range(s - 2):
        nxt = set()
        for k in layer:
            nxt.add(k[:-1] + (k[-1] + 1, 1))
            nxt.add((1, k[0] + 1) + k[1:])
            for i in range(len(k) - 1):
                nxt.add(k[:i] + (k[i] + 1, 1, k[i + 1] + 1) + k[i + 2:])
        layer = nxt
    return layer


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)
