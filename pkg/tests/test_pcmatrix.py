import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcx.algebra import StructureMismatch
from pcx.instances import KI, POSITIVE_REALS, REALS, S3, discrete_indicator, s_a_indicator, three_level_indicator
from pcx.pcmatrix import (
    InvalidPCMatrix,
    PCMatrix,
    ShortcutRefused,
    additive_indicator,
    consistent_matrix,
    inconsistency_indicator,
    indicator_3x3_abelian_shortcut,
    indicator_of_set,
    indicator_symmetrized_equality,
    indicator_value,
    is_consistent,
    product_matrix,
    product_matrix_indicator,
    random_pc_matrix,
    relabel,
    repair_reciprocal_upper,
    validate_pc,
)

KI_EXAMPLE = [[1, 2, 5], [0.5, 1, 3], [0.2, 1 / 3, 1]]
THREE_LEVEL_EXAMPLE = [[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]


def M(rows, X=POSITIVE_REALS):
    return PCMatrix(X, rows)


def test_validate_examples():
    assert validate_pc(M([[1, 2], [0.5, 1]])) == []
    (v,) = validate_pc(M([[1, 2], [0.4, 1]]))
    assert (v.i, v.j, v.kind) == (1, 0, "reciprocity") and v.expected == 0.5
    (v,) = validate_pc(M([[2]]))
    assert v.kind == "diagonal"


def test_matrix_shape_and_membership():
    with pytest.raises(ValueError):
        M([[1, 2], [0.5]])
    with pytest.raises(ValueError):
        M([[1, -2], [-0.5, 1]])
    with pytest.raises(ValueError):
        PCMatrix(POSITIVE_REALS, [[1]], labels=["a", "b"])


def test_repair_rebuilds_lower_triangle():
    A = repair_reciprocal_upper(M([[1, 2], [0.4, 1]]))
    assert A[1, 0] == 0.5 and validate_pc(A) == []


def test_consistency_examples():
    assert is_consistent(M([[1, 2, 4], [0.5, 1, 2], [0.25, 0.5, 1]])) == (True, None)
    assert is_consistent(M(KI_EXAMPLE)) == (False, (0, 2, 1))
    assert is_consistent(M([[1]])).consistent


@settings(max_examples=100)
@given(st.lists(st.floats(min_value=1e-2, max_value=1e2), min_size=1, max_size=6))
def test_consistent_matrices_are_pc_and_score_identity(weights):
    A = consistent_matrix(POSITIVE_REALS, weights)
    assert validate_pc(A) == []
    assert is_consistent(A).consistent
    report = inconsistency_indicator(KI, A)
    assert report.consistent and report.indicator_value == pytest.approx(0.0, abs=1e-12)


def test_relabel_examples():
    A = M(KI_EXAMPLE)
    assert relabel(A, [0, 1, 2]).entries == A.entries
    B = relabel(M([[1, 2], [0.5, 1]]), [1, 0])
    assert B.entries == ((1, 0.5), (2, 1)) and validate_pc(B) == []
    with pytest.raises(ValueError):
        relabel(A, [0, 0, 1])


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_relabel_invariance_exhaustive(n):
    rng = random.Random(n)
    for T, X in ((KI, POSITIVE_REALS), (three_level_indicator(), REALS)):
        A = random_pc_matrix(X, n, rng)
        value = indicator_value(T, A)
        for psi in itertools.permutations(range(n)):
            assert T.codomain.eq(indicator_value(T, relabel(A, psi)), value)


def test_indicator_of_set():
    assert indicator_of_set(KI, [(1.0, 1.0, 1.0)]) == 0.0
    assert indicator_of_set(KI, [(1.0, 2.0, 1.0), (2.0, 4.0, 2.0)]) == pytest.approx(0.5)
    assert indicator_of_set(KI, [(2.0, 5.0, 3.0)]) == pytest.approx(1 / 6)
    with pytest.raises(ValueError):
        indicator_of_set(KI, [])


def test_ki_example_report():
    report = inconsistency_indicator(KI, M(KI_EXAMPLE), top=3)
    assert report.indicator_value == pytest.approx(1 / 6, abs=1e-9)
    assert not report.consistent
    assert len(report.worst) == 3
    assert report.worst[0].value == report.indicator_value
    assert all(len({t.i, t.j, t.k}) == 3 for t in report.worst)
    i, j, k = report.argmax
    a = M(KI_EXAMPLE)
    assert KI(a[i, k], a[i, j], a[k, j]) == report.indicator_value


def test_three_level_example():
    A = PCMatrix(REALS, THREE_LEVEL_EXAMPLE)
    report = inconsistency_indicator(three_level_indicator(), A)
    assert report.indicator_value == 3
    assert max(t.value for t in report.worst) == 3


def test_small_matrices_are_consistent():
    rng = random.Random(0)
    for n in (1, 2):
        A = random_pc_matrix(POSITIVE_REALS, n, rng)
        assert inconsistency_indicator(KI, A).consistent


def test_indicator_rejects_invalid_and_mismatched():
    with pytest.raises(InvalidPCMatrix):
        inconsistency_indicator(KI, M([[1, 2], [0.4, 1]]))
    with pytest.raises(StructureMismatch):
        inconsistency_indicator(KI, PCMatrix(REALS, [[0]]))


def test_symmetrized_equality_reports():
    r = indicator_symmetrized_equality(three_level_indicator(), PCMatrix(REALS, THREE_LEVEL_EXAMPLE))
    assert r.passed and "three-triad-decomposition" in r
    rng = random.Random(9)
    for _ in range(20):
        assert indicator_symmetrized_equality(KI, random_pc_matrix(POSITIVE_REALS, 5, rng)).passed
        assert indicator_symmetrized_equality(discrete_indicator(S3), random_pc_matrix(S3, 3, rng)).passed
    short = indicator_symmetrized_equality(KI, M([[1, 2], [0.5, 1]]))
    assert short["symmetrized-indicator-equal"].skipped


def test_abelian_shortcut():
    assert indicator_3x3_abelian_shortcut(KI, M(KI_EXAMPLE)) == pytest.approx(1 / 6)
    assert indicator_3x3_abelian_shortcut(KI, M([[1, 2, 4], [0.5, 1, 2], [0.25, 0.5, 1]])) == 0.0
    with pytest.raises(ShortcutRefused):
        indicator_3x3_abelian_shortcut(three_level_indicator(), PCMatrix(REALS, THREE_LEVEL_EXAMPLE))
    with pytest.raises(ShortcutRefused):
        indicator_3x3_abelian_shortcut(discrete_indicator(S3), random_pc_matrix(S3, 3, random.Random(1)))
    with pytest.raises(ShortcutRefused):
        indicator_3x3_abelian_shortcut(KI, M([[1, 2], [0.5, 1]]))


def test_shortcut_fails_for_three_level_example():
    A = PCMatrix(REALS, THREE_LEVEL_EXAMPLE)
    T = three_level_indicator()
    a = A.entries
    assert T(a[0][1], a[0][2], a[1][2]) != indicator_value(T, A)


def test_product_matrix_indicator():
    B = consistent_matrix(REALS, [0.0, 1.0, 3.0])
    value = product_matrix_indicator(KI, M(KI_EXAMPLE), s_a_indicator(2.0), B)
    assert value == pytest.approx(1 / 6)
    C = product_matrix(M(KI_EXAMPLE), B)
    assert C[0, 2] == (5, -3.0)
    with pytest.raises(StructureMismatch):
        product_matrix(M(KI_EXAMPLE), PCMatrix(REALS, [[0]]))


def test_additive_indicator_examples():
    B = PCMatrix(REALS, [[float(j - i) for j in range(4)] for i in range(4)])
    assert additive_indicator(B, 3.0).indicator_value == 0.0
    logs = PCMatrix(REALS, [[math.log2(x) for x in row] for row in KI_EXAMPLE])
    assert additive_indicator(logs, 2.0).indicator_value == pytest.approx(1 / 6, abs=1e-12)
    rows = [[0.0, 1.0, 2.0], [-1.0, 0.0, 1.0], [-2.0, -1.0, 0.0]]
    rows[0][2], rows[2][0] = 3.0, -3.0
    assert additive_indicator(PCMatrix(REALS, rows), 2.0).indicator_value == pytest.approx(0.5)


def test_additive_indicator_matches_s_a_scan():
    rng = random.Random(4)
    for a in (2.0, math.e, 0.5):
        for _ in range(20):
            B = random_pc_matrix(REALS, 4, rng)
            assert additive_indicator(B, a).indicator_value == pytest.approx(
                indicator_value(s_a_indicator(a), B), abs=1e-12)


def test_additive_indicator_guards():
    with pytest.raises(ValueError):
        additive_indicator(PCMatrix(REALS, [[0]]), 1.0)
    with pytest.raises(InvalidPCMatrix):
        additive_indicator(PCMatrix(REALS, [[0, 1], [1, 0]]), 2.0)
    with pytest.raises(StructureMismatch):
        additive_indicator(M([[1]]), 2.0)
    huge = PCMatrix(REALS, [[0, 1e6, 0], [-1e6, 0, 0], [0, 0, 0]])
    assert additive_indicator(huge, 10.0).indicator_value == 1.0


def test_worst_ranking_is_descending():
    rng = random.Random(8)
    report = inconsistency_indicator(KI, random_pc_matrix(POSITIVE_REALS, 5, rng))
    values = [t.value for t in report.worst]
    # ties within tolerance keep index order, so compare with the group order
    G = KI.codomain
    assert all(G.cmp(u, v) >= 0 for u, v in zip(values, values[1:]))
    assert len(values) == 5 * 4 * 3
    assert report.to_dict()["indicator_value"] == report.indicator_value
