"""Hypothesis-driven laws for the indicator constructions and the triad scan."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from pcx.indicators import g3_from_indicator, inverse_indicator, pairwise_symmetrization
from pcx.instances import KI, POSITIVE_REALS, REALS, s_a_indicator, three_level_indicator
from pcx.laws import MAX_WITNESSES, LawCheck, tuples
from pcx.pcmatrix import inconsistency_indicator, random_pc_matrix, triads

pos = st.floats(min_value=1e-3, max_value=1e3)
real = st.floats(min_value=-50, max_value=50, allow_nan=False)
G = KI.codomain

INDICATORS = [KI, inverse_indicator(KI), pairwise_symmetrization(KI)]


@given(st.sampled_from(INDICATORS), pos, pos, pos)
def test_consistent_triples_vanish(T, a, c, _):
    assert G.is_identity(T(a, a * c, c))


@given(st.sampled_from(INDICATORS), pos, pos, pos)
def test_translation(T, a, b, c):
    assert G.eq(T(a, b, c), T(b, a * c, 1.0))


@given(st.sampled_from(INDICATORS), pos, pos, pos, pos, pos)
def test_subadditivity(T, a, b, c, d, e):
    assert G.le(T(a, d * e, c), T(a, b, c) + T(d, b, e))


@given(real, real, real, real, real)
def test_s_a_subadditivity(a, b, c, d, e):
    S = s_a_indicator(2.0)
    assert G.le(S(a, d + e, c), S(a, b, c) + S(d, b, e))


@given(real, real, real)
def test_three_level_values(x, y, z):
    assert three_level_indicator()(x, y, z) in (0, 1, 2, 3)


@given(pos, pos, pos)
def test_g3_permutation_symmetry(x, y, z):
    g = g3_from_indicator(KI)
    assert g(x, y, z) == g(y, z, x) == g(z, x, y) == g(x, z, y)


@settings(max_examples=50)
@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=10 ** 6))
def test_report_invariants(n, seed):
    A = random_pc_matrix(POSITIVE_REALS, n, random.Random(seed))
    report = inconsistency_indicator(KI, A)
    values = [KI(*t) for *_, t in triads(A)]
    assert G.eq(report.indicator_value, max(values))
    assert report.consistent == G.is_identity(report.indicator_value)
    if report.worst:
        assert G.le(report.worst[0].value, report.indicator_value)


@settings(max_examples=50)
@given(st.integers(min_value=3, max_value=6), st.integers(min_value=0, max_value=10 ** 6),
       st.integers(min_value=1, max_value=7))
def test_partitioned_scan_matches(n, seed, parts):
    A = random_pc_matrix(REALS, n, random.Random(seed))
    T = three_level_indicator()
    values = [T(*t) for *_, t in triads(A)]
    chunks = [values[i::parts] for i in range(parts)]
    partial = [max(c) for c in chunks if c]
    assert max(partial) == inconsistency_indicator(T, A).indicator_value


def test_tuples_exhaustive_on_small_carriers():
    it, exhaustive = tuples(3, None, 10, random.Random(0), elements=(0, 1, 2))
    assert exhaustive and len(list(it)) == 27
    it, exhaustive = tuples(5, None, 10, random.Random(0), elements=tuple(range(24)))
    assert not exhaustive and len(list(it)) == 10


def test_law_check_keeps_a_bounded_number_of_witnesses():
    check = LawCheck("x")
    for i in range(20):
        check.record(False, (i,))
    assert check.failure_count == 20 and len(check.failures) == MAX_WITNESSES
    assert check.witness == (0,) and "FAIL" in check.line()
