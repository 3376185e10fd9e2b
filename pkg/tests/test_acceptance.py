"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line."""

import itertools
import math
import random

import pytest

from pcx.algebra import Order, metric_from_absolute_value
from pcx.indicators import (
    AbelianRequired,
    full_symmetrization,
    g3_from_indicator,
    indicator_from_g3,
    indicator_from_metric,
    metric_from_indicator,
    pairwise_symmetrization,
    product_indicator,
    reverse_indicator,
)
from pcx.instances import (
    ADDITIVE_REALS,
    KI,
    KI_ABSOLUTE_VALUE,
    KLEIN_FOUR,
    POSITIVE_REALS,
    REALS,
    S3,
    build_catalog,
    discrete_indicator,
    ki,
    klein_indicator,
    negative_controls,
    s_a_indicator,
    three_level_indicator,
)
from pcx.pcmatrix import (
    PCMatrix,
    additive_indicator,
    indicator_3x3_abelian_shortcut,
    indicator_value,
    inconsistency_indicator,
    product_matrix_indicator,
    random_pc_matrix,
)

SEED = 42


def _log_uniform(rng, lo=1e-3, hi=1e3):
    return math.exp(rng.uniform(math.log(lo), math.log(hi)))


def test_ac01_three_level_example(acceptance):
    T = three_level_indicator(1, 2, 3)
    A = PCMatrix(REALS, [[0, 1, 1], [-1, 0, 1], [-1, -1, 0]])
    got = (T(1, 1, 1), T(-1, -1, -1), T(-1, -1, 1), indicator_value(T, A))
    ok = got == (1, 2, 3, 3) and all(isinstance(v, int) for v in got)
    acceptance(ok, f"T(a,a,a), T(a^-1,a^-1,a^-1), T(a^-1,a^-1,a), I_T[A] = {got}")
    assert ok


def test_ac02_ki_equals_absolute_value_indicator(acceptance):
    induced = indicator_from_metric(metric_from_absolute_value(KI_ABSOLUTE_VALUE))
    rng = random.Random(SEED)
    worst = 0.0
    for _ in range(100_000):
        x, y, z = _log_uniform(rng), _log_uniform(rng), _log_uniform(rng)
        worst = max(worst, abs(induced(x, y, z) - ki(x, y, z)))
    ok = worst <= 1e-12
    acceptance(ok, f"max |T_v - KI| over 1e5 triples = {worst:.3e} (<= 1e-12)")
    assert ok


def test_ac03_axiom_suites(acceptance):
    reports = build_catalog(check=False).check_all(n_samples=1000, seed=SEED)
    failed = [r.subject for r in reports if not r.passed]
    subjects = " ".join(r.subject for r in reports)
    required = ["metric:norm:additive", "indicator:ki ", "indicator:sa:2 ", "indicator:sa:e ",
                "indicator:sa:10 ", "metric:three-level", "indicator:product:",
                "indicator:symmetrized:", "indicator:inverse:", "g3:ki", "absval:ki",
                "alo:additive", "alo:multiplicative"]
    missing = [k for k in required if k not in subjects]
    negatives = negative_controls().check_all(n_samples=1000, seed=SEED)
    unwitnessed = [r.subject for r in negatives
                   if r.passed or any(c.witness is None for c in r.checks if not c.passed)]
    ok = not failed and not missing and not unwitnessed
    acceptance(ok, f"{len(reports)} suites, failed={failed}, missing={missing}; "
                   f"{len(negatives)} negative controls, unwitnessed={unwitnessed}")
    assert ok


def _domain_triples(T, rng, n):
    X = T.domain
    if X.finite:
        return list(itertools.product(X.elements, repeat=3))
    return [(X.sample(rng), X.sample(rng), X.sample(rng)) for _ in range(n)]


def _distance(G, u, v):
    return abs(u - v) if isinstance(u, (int, float)) else (0.0 if G.eq(u, v) else math.inf)


def test_ac04_duality_round_trips(acceptance):
    indicators = build_catalog(check=False).indicators
    worst_d = worst_g = 0.0
    for T in indicators.values():
        G = T.codomain
        via_d = indicator_from_metric(metric_from_indicator(T))
        via_g = indicator_from_g3(g3_from_indicator(T))
        for x, y, z in _domain_triples(T, random.Random(SEED), 1000):
            t = T(x, y, z)
            worst_d = max(worst_d, _distance(G, t, via_d(x, y, z)))
            worst_g = max(worst_g, _distance(G, t, via_g(x, y, z)))
    ok = worst_d <= 1e-12 and worst_g <= 1e-12
    acceptance(ok, f"{len(indicators)} instances; max discrepancy T->d_T->T {worst_d:.3e}, "
                   f"T->g_T->T {worst_g:.3e} (<= 1e-12)")
    assert ok


def test_ac05_symmetrization_equality(acceptance):
    rng = random.Random(SEED)
    cases = [(KI, POSITIVE_REALS), (three_level_indicator(), REALS)]
    trials = mismatches = 0
    for T, X in cases:
        Ts = pairwise_symmetrization(T)
        for n in (3, 4, 5):
            for _ in range(100):
                A = random_pc_matrix(X, n, rng)
                trials += 1
                if T.codomain.cmp(indicator_value(T, A), indicator_value(Ts, A)) != Order.EQ:
                    mismatches += 1
    ok = mismatches == 0 and trials == 600
    acceptance(ok, f"{trials} matrices (KI, three-level; n=3,4,5), {mismatches} mismatches under cmp")
    assert ok


def test_ac06_abelian_shortcut(acceptance):
    rng = random.Random(SEED)
    mismatches, worst = 0, 0.0
    for _ in range(100):
        A = random_pc_matrix(POSITIVE_REALS, 3, rng)
        short = indicator_3x3_abelian_shortcut(KI, A)
        full = max(KI(A[i, k], A[i, j], A[k, j]) for i, j, k in itertools.product(range(3), repeat=3))
        worst = max(worst, abs(short - full))
        mismatches += KI.codomain.cmp(short, full) != Order.EQ
    ok = mismatches == 0
    acceptance(ok, f"100 random 3x3 matrices, {mismatches} mismatches under cmp "
                   f"(max |shortcut - scan| = {worst:.3e})")
    assert ok


def test_ac07_transport_equivalence(acceptance):
    rng = random.Random(SEED)
    S2 = s_a_indicator(2.0)
    worst = 0.0
    for _ in range(100):
        M = random_pc_matrix(POSITIVE_REALS, 4, rng)
        B = PCMatrix(REALS, [[math.log2(x) for x in row] for row in M.entries])
        ki_value = indicator_value(KI, M)
        worst = max(worst, abs(indicator_value(S2, B) - ki_value),
                    abs(additive_indicator(B, 2.0).indicator_value - ki_value))
    ok = worst <= 1e-9
    acceptance(ok, f"100 random 4x4 matrices, max |I_S2[log2 M] - I_KI[M]| = {worst:.3e} (<= 1e-9)")
    assert ok


def test_ac08_full_symmetrization(acceptance):
    T = klein_indicator()
    klein = full_symmetrization(T)
    triples = list(itertools.product(KLEIN_FOUR.elements, repeat=3))
    same = sum(klein.candidate(*t) == T(*t) for t in triples)
    reals = full_symmetrization(KI)
    tf_221 = reals.candidate(2.0, 2.0, 1.0)
    ok = (same == 64 and klein.valid and klein.equals_original is True
          and not reals.valid and reals.violation_witness is not None
          and tf_221 > 0 and math.isclose(tf_221, 0.75))
    acceptance(ok, f"Klein: T^f = T on {same}/64 triples; R+: witness {reals.violation_witness}, "
                   f"T^f(2,2,1) = {tf_221}")
    assert ok


def test_ac09_nonabelian_witness(acceptance):
    T = discrete_indicator(S3)
    witnesses = [t for t in itertools.product(S3.elements, repeat=3) if T(*t) != T(t[2], t[1], t[0])]
    try:
        reverse_indicator(T)
        raised = None
    except AbelianRequired as exc:
        raised = exc
    ok = bool(witnesses) and raised is not None and raised.witness is not None
    first = tuple(S3.label(x) for x in witnesses[0]) if witnesses else None
    acceptance(ok, f"{len(witnesses)} asymmetric triples on S3, first {first}; "
                   f"AbelianRequired witness {raised.witness if raised else None}")
    assert ok


def test_ac10_product_law(acceptance):
    rng = random.Random(SEED)
    pairs = [(KI, POSITIVE_REALS, s_a_indicator(2.0), REALS),
             (three_level_indicator(), REALS, discrete_indicator(S3), S3)]
    mismatches = trials = 0
    for T1, X1, T2, X2 in pairs:
        T = product_indicator(T1, T2)
        for _ in range(50):
            A, B = random_pc_matrix(X1, 4, rng), random_pc_matrix(X2, 4, rng)
            trials += 1
            value = product_matrix_indicator(T1, A, T2, B)
            expected = max(indicator_value(T1, A), indicator_value(T2, B))
            mismatches += value != expected
    ok = mismatches == 0 and trials == 100
    acceptance(ok, f"{trials} paired 4x4 matrices, {mismatches} exact mismatches")
    assert ok
