"""Acceptance criteria 1-11, one test each.

A summary line per criterion is printed at the end of the pytest run.
"""

import time
from math import gcd

import pytest

from artifact import reference as ref
from artifact.cfrac import catalan, enumerate_K, enumerate_K_bounded, hj_dual, hj_expand
from artifact.classt import bound_checks, discrepancies, discrepancies_adjunction, enumerate_wahl
from artifact.incidence import IncidenceMatrix, canonical, enumerate_all, verify
from artifact.mmp import run_mmp
from artifact.sandwich import combinatorial_data, usual_sandwich_cqss
from artifact.stevens import enumerate_chain_presolutions, m_resolution, p_resolutions_cqss
from artifact.whs import (
    StarSingularity,
    TheoremViolation,
    classify_case,
    construct_presolution,
    d_block_check,
    surjectivity_report,
    verify_phi_pi,
)
from artifact.classt import is_wahl

criterion = pytest.mark.criterion


class Clock:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t


@criterion(1, "continued fractions of 19/11")
def test_c1_continued_fractions():
    with Clock() as c:
        chain = hj_expand(19, 11)
        dual = hj_dual(chain)
    assert chain == [2, 4, 3] and dual == [3, 2, 3, 2]
    assert c.elapsed < 1e-3


@criterion(2, "K-sequences: 19/11 set and Catalan counts")
def test_c2_k_sequences():
    with Clock() as c:
        ks = enumerate_K_bounded([3, 2, 3, 2])
        counts = {s: len(enumerate_K(s)) for s in range(2, 9)}
    assert ks == {(1, 2, 2, 1), (3, 1, 2, 2), (2, 1, 3, 1)}
    assert counts == {s: catalan(s - 1) for s in range(2, 9)}
    assert c.elapsed < 1


@criterion(3, "NPP matrices of 19/11")
def test_c3_npp():
    with Clock() as c:
        descs = p_resolutions_cqss(19, 11)
    assert c.elapsed < 1e-2
    assert {d.k for d in descs} == set(ref.NPP_19_11)
    for d in descs:
        want = ref.NPP_19_11[d.k]
        assert d.matrix.as_rows() == want
        shuffled = IncidenceMatrix.from_rows(d.matrix.rows, [r[::-1] for r in want])
        assert canonical(shuffled) == canonical(d.matrix)


@criterion(4, "MMP on the three 19/11 P-resolutions")
def test_c4_mmp():
    st = usual_sandwich_cqss(ref.CHAIN_19_11)
    for name, res in ref.presolutions_19_11().items():
        with Clock() as c:
            out = run_mmp(res, st)
        assert c.elapsed < 0.1
        want = IncidenceMatrix.from_rows(out.matrix.rows, ref.MMP_19_11[name])
        assert canonical(out.matrix) == canonical(want), name
        assert all(s.column is None for s in out.trace if s.move.kind == "flip")
        m = [s.measure[0] for s in out.trace]
        assert all(a > b for a, b in zip(m, m[1:]))


@criterion(5, "enumeration = NPP = MMP for all n <= 33")
def test_c5_oracle_equivalence():
    t0 = time.perf_counter()
    for n in range(2, 34):
        for q in range(1, n):
            if gcd(n, q) != 1:
                continue
            chain = hj_expand(n, q)
            st = usual_sandwich_cqss(chain)
            enum = enumerate_all(combinatorial_data(st))
            assert len(enum) == len(set(enum)), (n, q)
            npp = {canonical(d.matrix) for d in p_resolutions_cqss(n, q)}
            assert set(enum) == npp, (n, q)
            mmp = set()
            for res in enumerate_chain_presolutions(chain):
                run = res if all(is_wahl(w) for w in res.mark_weights()) else m_resolution(res)
                mmp.add(canonical(run_mmp(run, st).matrix))
            assert mmp == npp, (n, q)
    assert time.perf_counter() - t0 < 300


@criterion(6, "discrepancies of Wahl chains and the three bound lemmas")
def test_c6_discrepancies():
    t0 = time.perf_counter()
    chains = sorted(enumerate_wahl(9))
    assert {ln: sum(len(c) == ln for c in chains) for ln in range(1, 10)} == {ln: 2 ** (ln - 1) for ln in range(1, 10)}
    failures: dict[str, list] = {"head": [], "leading_twos": [], "interior": []}
    for c in chains:
        m = discrepancies(c)
        assert m == discrepancies_adjunction(c)
        assert all(-1 < x < 0 for x in m)
        rep = bound_checks(c)
        for k in failures:
            if rep[k] == "fail":
                failures[k].append(c)
    assert time.perf_counter() - t0 < 10
    # the head bound is stated for every chain with a_1 >= 3; type-M chains such as [5,2] break it
    bad = {k: v for k, v in failures.items() if v}
    assert not bad, f"bound fails: {[(k, len(v), list(v[0])) for k, v in bad.items()]}"


X = StarSingularity(ref.STAR_D, ref.STAR_BRANCHES)


@criterion(7, "reference star, Case A")
def test_c7_case_a():
    with Clock() as c:
        M = ref.star_matrix(ref.CASE_A)
        tag = classify_case(M, X)
        sp = construct_presolution(M, X, tag)
        rep = verify_phi_pi(M, X, sp)
    assert tag.kind == "CaseA"
    for i, block in ref.CASE_A_BLOCKS.items():
        assert sorted(tag.blocks[i].columns) == sorted(zip(*block))
    assert sorted(tuple(m) for m in sp.res.marks) == [("A2,2", "A2,3"), ("A3,3",)]
    assert sorted(sp.mark_weights()) == sorted(ref.CASE_A_MARKS)
    assert rep.ok
    assert c.elapsed < 1


@criterion(8, "reference star, Case B")
def test_c8_case_b():
    with Clock() as c:
        M = ref.star_matrix(ref.CASE_B)
        tag = classify_case(M, X)
        sp = construct_presolution(M, X, tag)
        rep = verify_phi_pi(M, X, sp)
    assert tag.kind == "CaseB2" and tag.g_prime == 2
    assert [g for i, g in tag.g.items() if i not in (tag.first, tag.partner)] == [1]
    assert sorted(tuple(m) for m in sp.res.marks) == [("A1,2", "A1,1", "Ac", "A3,1"), ("A2,2", "A2,3"), ("A3,3",)]
    assert rep.ok
    assert c.elapsed < 5


@criterion(9, "surjectivity at desk scale")
def test_c9_surjectivity():
    t0 = time.perf_counter()
    for Y in (X, StarSingularity(6, [[2], [2], [2]])):
        rep = surjectivity_report(Y)
        assert rep.total > 0 and rep.complete, rep.table()
    assert time.perf_counter() - t0 < 600


@criterion(10, "d = t+2 negative control")
def test_c10_negative_control():
    t0 = time.perf_counter()
    R = StarSingularity(ref.T2_D, ref.T2_BRANCHES)
    data = R.data()
    enum = set(enumerate_all(data))
    # the unbalanced version is not a solution (row C4 sums to 2); the corrected one is
    assert not verify(ref.star_matrix(ref.T2_UNBALANCED, ref.T2_ROWS), data).ok
    M = ref.star_matrix(ref.T2_CORRECTED, ref.T2_ROWS)
    assert canonical(M) in enum
    with pytest.raises(TheoremViolation, match="more than one branch"):
        classify_case(M, R)
    assert time.perf_counter() - t0 < 60


@criterion(11, "forced D-block shape")
def test_c11_d_block():
    stars = [
        X,
        StarSingularity(6, [[2], [2], [2]]),
        StarSingularity(7, [[2], [2], [2], [2]]),
        StarSingularity(7, [[2, 2], [3], [2]]),
        StarSingularity(8, [[3, 2], [2, 4], [2], [5]]),
        StarSingularity(6, [[2, 3, 2], [2, 3], [2, 2]]),
        StarSingularity(7, [[3], [2, 2], [4], [2]]),
    ]
    bad = [(Y.d, Y.branches) for Y in stars for cf in enumerate_all(Y.data()) if not d_block_check(cf.matrix(), Y)]
    assert not bad
