from math import gcd

import pytest
from hypothesis import given, strategies as st

from artifact.cfrac import enumerate_K
from artifact.classt import is_class_t, is_wahl
from artifact.stevens import (
    _direct_split,
    k_to_tri,
    p_resolutions_cqss,
    realize_all,
    tri_to_k,
    triangulations,
)


@pytest.mark.parametrize("s", range(2, 9))
def test_triangulations_biject_onto_k(s):
    ks = [tri_to_k(t) for t in triangulations(s)]
    assert len(ks) == len(set(ks))
    assert set(ks) == enumerate_K(s)


K_UP_TO_8 = sorted(k for s in range(2, 9) for k in enumerate_K(s))


@given(st.sampled_from(K_UP_TO_8))
def test_k_to_tri_round_trip(k):
    assert tri_to_k(k_to_tri(k)) == k


def test_k_to_tri_rejects_non_members():
    with pytest.raises(ValueError):
        k_to_tri((1, 1, 1))


def test_19_11_descriptors():
    descs = p_resolutions_cqss(19, 11)
    assert {d.k for d in descs} == {(1, 2, 2, 1), (3, 1, 2, 2), (2, 1, 3, 1)}
    assert descs[0].b == (3, 2, 3, 2)


def test_edge_cases():
    (only,) = p_resolutions_cqss(2, 1)
    assert only.k is None
    assert len(p_resolutions_cqss(4, 1)) == 2


@pytest.mark.parametrize("w", [[3, 3], [4, 3, 2], [5, 3, 2, 2], [3, 2, 3], [2, 3, 4], [3, 2, 2, 3]])
def test_m_resolution_split(w):
    c, marking = _direct_split(w)
    ws = [x for x, _ in c]
    assert all(is_wahl(ws[a:b + 1]) for a, b in marking)
    assert len(marking) == is_class_t(w).d
    assert [o for _, o in c if o] == [f"A{j + 1}" for j in range(len(w))]


@pytest.mark.parametrize("n", [19, 23, 29, 41])
def test_every_descriptor_is_realized_by_its_mmp_matrix(n):
    for q in range(1, n):
        if gcd(n, q) != 1:
            continue
        for d in realize_all(n, q):
            assert d.realization is not None, (n, q, d.k)
            assert "elimination" not in d.note, (n, q, d.k)


@pytest.mark.parametrize("n,q", [(82, 57), (337, 141)])
def test_d2_marks_needing_three_blow_ups(n, q):
    # marks such as [5,3,2,2] split into [6,2,2]-1-[6,2,2]
    for d in realize_all(n, q):
        assert d.realization is not None and "elimination" not in d.note
