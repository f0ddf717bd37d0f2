import pytest

from artifact import reference as ref
from artifact.incidence import canonical, enumerate_all
from artifact.whs import (
    StarSingularity,
    TheoremViolation,
    classify_case,
    construct_presolution,
    d_block_check,
    star_mmp_matrices,
    surjectivity_report,
    verify_phi_pi,
)

X = StarSingularity(ref.STAR_D, ref.STAR_BRANCHES)


def _marks_by_id(sp):
    return sorted(tuple(m) for m in sp.res.marks)


def test_from_fractions():
    Y = StarSingularity.from_fractions(6, ref.STAR_FRACTIONS)
    assert Y.branches == ref.STAR_BRANCHES and Y.t == 3 and Y.big_node


def test_case_a():
    M = ref.star_matrix(ref.CASE_A)
    tag = classify_case(M, X)
    assert tag.kind == "CaseA"
    for i, block in ref.CASE_A_BLOCKS.items():
        got = tag.blocks[i]
        assert sorted(got.columns) == sorted(zip(*block))
    sp = construct_presolution(M, X, tag)
    assert _marks_by_id(sp) == [("A2,2", "A2,3"), ("A3,3",)]
    assert verify_phi_pi(M, X, sp).ok


def test_case_b2():
    M = ref.star_matrix(ref.CASE_B)
    tag = classify_case(M, X)
    assert (tag.kind, tag.first, tag.partner, tag.g_prime, tag.s) == ("CaseB2", 1, 3, 2, 0)
    assert tag.g[2] == 1
    sp = construct_presolution(M, X, tag)
    assert _marks_by_id(sp) == [("A1,2", "A1,1", "Ac", "A3,1"), ("A2,2", "A2,3"), ("A3,3",)]
    assert verify_phi_pi(M, X, sp).ok


def test_reference_star_is_covered():
    rep = surjectivity_report(X)
    assert rep.complete and rep.total == 16
    kinds = sorted(e.case for e in rep.entries)
    assert kinds.count("CaseA") == 4 and kinds.count("CaseB1") == 4 and kinds.count("CaseB2") == 8


@pytest.mark.parametrize(
    "d,branches",
    [
        (6, [[2], [2], [2]]),
        (7, [[2], [2], [2], [2]]),
        (7, [[2, 2], [3], [2]]),
        (8, [[3, 2], [2, 4], [2], [5]]),
        # a blow-up inside the partner branch breaks the stair pattern
        (6, [[2, 3, 2], [2, 3], [2, 2]]),
        (6, [[2, 3, 3], [5, 3, 3], [3, 2]]),
        # two branches: a chain
        (5, [[3, 2], [3]]),
        (5, [[2, 2], [3, 2, 2]]),
    ],
)
def test_coverage_and_brute_force_agree(d, branches):
    Y = StarSingularity(d, branches)
    rep = surjectivity_report(Y)
    assert rep.complete, rep.table()
    enum = {e.matrix for e in rep.entries}
    assert set(star_mmp_matrices(Y, 2)) == enum


def test_non_stair_partner_is_recorded():
    Y = StarSingularity(6, [[2, 3, 2], [2, 3], [2, 2]])
    tags = [classify_case(cf.matrix(), Y) for cf in enumerate_all(Y.data())]
    assert any(t.kind == "CaseB2" and not t.stair_shaped for t in tags)


def test_d_block_shape():
    for cf in enumerate_all(X.data()):
        assert d_block_check(cf.matrix(), X)


def test_t_plus_2_violation():
    R = StarSingularity(ref.T2_D, ref.T2_BRANCHES)
    M = ref.star_matrix(ref.T2_CORRECTED, ref.T2_ROWS)
    assert canonical(M) in set(enumerate_all(R.data()))
    with pytest.raises(TheoremViolation, match="more than one branch"):
        classify_case(M, R)


def test_unbalanced_t_plus_2_matrix_is_not_a_solution():
    R = StarSingularity(ref.T2_D, ref.T2_BRANCHES)
    with pytest.raises(ValueError, match="not a combinatorial incidence matrix"):
        classify_case(ref.star_matrix(ref.T2_UNBALANCED, ref.T2_ROWS), R)


def test_t_plus_2_matrix_has_no_small_presolution():
    R = StarSingularity(ref.T2_D, ref.T2_BRANCHES)
    M = canonical(ref.star_matrix(ref.T2_CORRECTED, ref.T2_ROWS))
    realized = set(star_mmp_matrices(R, 3))
    assert M not in realized
    assert len(realized) < len(enumerate_all(R.data()))
