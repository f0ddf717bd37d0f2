import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from artifact.cfrac import hj_expand
from artifact.incidence import IncidenceMatrix, canonical, enumerate_all, verify
from artifact.sandwich import combinatorial_data, sandwich_whs, usual_sandwich_cqss
from artifact.stevens import p_resolutions_cqss


def test_usual_structure_19_11():
    st_ = usual_sandwich_cqss([2, 4, 3])
    # root a_1-2 = 0, interior 4-2 = 2, end 3-1 = 2
    assert st_.connector_counts() == {"A1": 0, "A2": 2, "A3": 2}
    data = combinatorial_data(st_)
    assert data.labels == ["C1", "C2", "C3", "C4"]
    assert [data.lengths[x] for x in data.labels] == [3, 3, 4, 4]


def test_star_structure_counts():
    st_ = sandwich_whs(6, [[2, 3], [2, 2, 5], [2, 2, 4]])
    c = st_.connector_counts()
    assert c["Ac"] == 6 - 3 - 1
    assert c["A1,2"] == 2 and c["A2,3"] == 4 and c["A1,1"] == 0
    with pytest.raises(ValueError):
        sandwich_whs(3, [[2], [2], [2]])


def test_star_pairs_between_branches():
    data = combinatorial_data(sandwich_whs(7, [[2], [3, 2], [4]]))
    D = [x for x in data.labels if x.startswith("D")]
    C = [x for x in data.labels if x.startswith("C")]
    assert all(data.lengths[x] == 2 for x in D)
    assert all(data.p(a, b) == 1 for a in D for b in D if a != b)
    assert all(data.p(a, b) == 1 for a in C for b in C if a.split(",")[0] != b.split(",")[0])


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_data_does_not_depend_on_contraction_order(seed):
    st_ = sandwich_whs(6, [[2, 3], [2, 2, 5], [2, 2, 4]])
    a = combinatorial_data(st_)
    b = combinatorial_data(st_, random.Random(seed))
    assert (a.lengths, a.pair) == (b.lengths, b.pair)


def test_verify_reports_violations():
    data = combinatorial_data(usual_sandwich_cqss([2, 4, 3]))
    good = IncidenceMatrix.from_rows(data.labels, [[1, 1, 1, 0, 0], [0, 1, 1, 1, 0], [1, 0, 1, 1, 1], [1, 1, 0, 1, 1]])
    assert verify(good, data).ok
    bad = IncidenceMatrix.from_rows(data.labels, [[1, 1, 1, 0, 0], [0, 1, 1, 1, 0], [1, 0, 1, 1, 1], [1, 1, 0, 1, 0]])
    rep = verify(bad, data)
    assert not rep.ok and any("l(C4)" in v for v in rep.violations)


def test_canonical_ignores_column_order():
    M = IncidenceMatrix.from_rows(["a", "b"], [[1, 0, 1], [0, 1, 1]])
    N = IncidenceMatrix.from_rows(["a", "b"], [[1, 1, 0], [1, 0, 1]])
    assert canonical(M) == canonical(N)


@pytest.mark.parametrize("n", range(2, 20))
def test_enumeration_equals_npp(n):
    for q in range(1, n):
        if gcd(n, q) != 1:
            continue
        data = combinatorial_data(usual_sandwich_cqss(hj_expand(n, q)))
        enum = enumerate_all(data)
        assert len(enum) == len(set(enum))
        npp = {canonical(d.matrix) for d in p_resolutions_cqss(n, q)}
        assert set(enum) == npp
