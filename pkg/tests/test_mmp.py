import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from artifact import reference as ref
from artifact.cfrac import hj_expand
from artifact.classt import is_wahl
from artifact.incidence import IncidenceMatrix, canonical, verify
from artifact.mmp import MMPError, mmp_matrix, run_mmp, structural_predicates, trace_to_dot, trace_to_json
from artifact.sandwich import combinatorial_data, usual_sandwich_cqss
from artifact.stevens import enumerate_chain_presolutions

ST = usual_sandwich_cqss(ref.CHAIN_19_11)
RES = ref.presolutions_19_11()


@pytest.mark.parametrize("name", list(ref.MMP_19_11))
def test_19_11_matrices(name):
    out = run_mmp(RES[name], ST)
    want = IncidenceMatrix.from_rows(out.matrix.rows, ref.MMP_19_11[name])
    assert canonical(out.matrix) == canonical(want)
    assert verify(out.matrix, combinatorial_data(ST)).ok
    assert len(out.trace) >= 1


@pytest.mark.parametrize("name", list(ref.MMP_19_11))
def test_trace_invariants(name):
    out = run_mmp(RES[name], ST)
    measures = [s.measure[0] for s in out.trace]
    assert all(a > b for a, b in zip(measures, measures[1:]))
    assert all(s.column is None for s in out.trace if s.move.kind == "flip")
    assert out.flips == sum(s.move.kind == "flip" for s in out.trace)


def test_flips_happen_on_marked_resolutions():
    assert run_mmp(RES["minimal"], ST).flips == 0
    assert run_mmp(RES["[4]"], ST).flips >= 1


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(list(ref.MMP_19_11)), st.integers(0, 2**32))
def test_schedule_independence_19_11(name, seed):
    a = run_mmp(RES[name], ST).matrix
    b = run_mmp(RES[name], ST, rng=random.Random(seed)).matrix
    assert canonical(a) == canonical(b)


def _wahl_resolutions(limit=30):
    out = []
    for n in range(5, limit):
        for q in range(1, n):
            if gcd(n, q) == 1:
                chain = hj_expand(n, q)
                out += [(chain, r) for r in enumerate_chain_presolutions(chain) if r.marks and all(is_wahl(w) for w in r.mark_weights())]
    return out


WAHL_RES = _wahl_resolutions()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(range(len(WAHL_RES))), st.integers(0, 2**32))
def test_schedule_independence_random_chains(i, seed):
    chain, res = WAHL_RES[i]
    st_ = usual_sandwich_cqss(chain)
    a = run_mmp(res, st_).matrix
    b = run_mmp(res, st_, rng=random.Random(seed)).matrix
    assert canonical(a) == canonical(b)
    assert verify(a, combinatorial_data(st_)).ok


def test_structural_predicates():
    for res in RES.values():
        M = mmp_matrix(res, ST)
        assert structural_predicates(res, ST, M).ok


def test_budget_is_enforced():
    with pytest.raises(MMPError):
        run_mmp(RES["[2,5]+[4]"], ST, budget=1)


def test_trace_exports():
    out = run_mmp(RES["[4]"], ST)
    assert trace_to_dot(out.trace).count("graph step") == len(out.trace)
    assert trace_to_json(out.trace).startswith("[")
