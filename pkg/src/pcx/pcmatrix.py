"""Pairwise comparisons matrices over a group and their T-inconsistency indicator.

The indicator of a matrix is the worst value of ``T(a_ik, a_ij, a_kj)`` over all
ordered index triples, repeated indices included.  Reports additionally rank the
proper triads (pairwise distinct indices) so the worst comparisons can be located.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from pcx.algebra import (
    Elem,
    Group,
    StructureMismatch,
    approx_eq,
    find_noncommuting_pair,
    product_group,
)
from pcx.indicators import IndicatorMap, pairwise_symmetrization, product_indicator
from pcx.instances import ADDITIVE_REALS, REALS
from pcx.laws import LawReport, Sampler


class InvalidPCMatrix(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        shown = ", ".join(f"({v.i},{v.j}) {v.kind}" for v in violations[:10])
        more = "" if len(violations) <= 10 else f" and {len(violations) - 10} more"
        super().__init__(f"not a PC matrix: {shown}{more}")


class ShortcutRefused(ValueError):
    """The single-triad shortcut does not apply to this indicator or matrix."""


class LawMismatch(AssertionError):
    """A value guaranteed by construction disagreed with its brute-force counterpart."""


@dataclass(frozen=True, eq=False)
class PCMatrix:
    group: Group
    entries: tuple[tuple[Elem, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        n = len(rows)
        if n == 0:
            raise ValueError("a PC matrix needs at least one row")
        for r in rows:
            if len(r) != n:
                raise ValueError(f"matrix is not square: row of length {len(r)} in {n}x{n}")
            for x in r:
                self.group.own(x)
        object.__setattr__(self, "entries", rows)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != n:
                raise ValueError(f"{len(labels)} labels for {n} rows")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Elem:
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[Elem]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    kind: str  # "diagonal" or "reciprocity"
    found: Elem
    expected: Elem


def validate_pc(A: PCMatrix) -> list[Violation]:
    """Every entry breaking ``a_ii = 1`` or ``a_ij = a_ji^-1``; an empty list means valid.

    The upper triangle is taken as authoritative, so reciprocity breaks are
    reported at the lower position ``(i, j)`` with ``i > j``.
    """
    X, a = A.group, A.entries
    out = []
    for i in range(A.n):
        if not X.is_identity(a[i][i]):
            out.append(Violation(i, i, "diagonal", a[i][i], X.identity))
    for i in range(A.n):
        for j in range(i):
            expected = X.inverse(a[j][i])
            if not X.eq(a[i][j], expected):
                out.append(Violation(i, j, "reciprocity", a[i][j], expected))
    return out


def require_pc(A: PCMatrix) -> PCMatrix:
    violations = validate_pc(A)
    if violations:
        raise InvalidPCMatrix(violations)
    return A


def repair_reciprocal_upper(A: PCMatrix) -> PCMatrix:
    """Rebuild the lower triangle as inverses of the upper one."""
    X = A.group
    rows = A.rows()
    for i in range(A.n):
        for j in range(i):
            rows[i][j] = X.inverse(rows[j][i])
    return PCMatrix(X, rows, A.labels)


class Consistency(NamedTuple):
    consistent: bool
    witness: tuple[int, int, int] | None


def is_consistent(A: PCMatrix) -> Consistency:
    """Check ``a_ik . a_kj = a_ij`` for all indices; the witness is ``(i, j, k)``.

    Triads with ``i < k < j`` are scanned first, since for a PC matrix they
    already decide consistency; the rest of the cube is scanned after them.
    """
    X, a, n = A.group, A.entries, A.n

    def holds(i, j, k):
        return X.eq(X.op(a[i][k], a[k][j]), a[i][j])

    for i, k, j in itertools.combinations(range(n), 3):
        if not holds(i, j, k):
            return Consistency(False, (i, j, k))
    for i, j, k in itertools.product(range(n), repeat=3):
        if not holds(i, j, k):
            return Consistency(False, (i, j, k))
    violations = validate_pc(A)
    if violations:
        raise LawMismatch(f"consistent matrix failed PC validation: {violations}")
    return Consistency(True, None)


def relabel(A: PCMatrix, psi: Sequence[int]) -> PCMatrix:
    """Reindex by a bijection: entry ``(i, j)`` of the result is ``A[psi[i], psi[j]]``."""
    psi = [int(p) for p in psi]
    if sorted(psi) != list(range(A.n)):
        raise ValueError(f"{psi} is not a permutation of range({A.n})")
    a = A.entries
    rows = [[a[psi[i]][psi[j]] for j in range(A.n)] for i in range(A.n)]
    labels = None if A.labels is None else [A.labels[p] for p in psi]
    return PCMatrix(A.group, rows, labels)


def consistent_matrix(X: Group, weights: Sequence[Elem], labels=None) -> PCMatrix:
    """``a_ij = w_i . w_j^-1``, consistent by construction."""
    rows = [[X.op(wi, X.inverse(wj)) for wj in weights] for wi in weights]
    for i in range(len(weights)):
        rows[i][i] = X.identity
    return PCMatrix(X, rows, labels)


def random_pc_matrix(X: Group, n: int, rng: random.Random,
                     sampler: Sampler | None = None) -> PCMatrix:
    """Random upper triangle, identity diagonal, exact inverses below."""
    draw = sampler or X.sample
    rows = [[X.identity] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = draw(rng)
            rows[j][i] = X.inverse(rows[i][j])
    return PCMatrix(X, rows)


def triads(A: PCMatrix) -> Iterator[tuple[int, int, int, tuple[Elem, Elem, Elem]]]:
    """All ``(i, j, k, (a_ik, a_ij, a_kj))`` over the full index cube."""
    a = A.entries
    for i, j, k in itertools.product(range(A.n), repeat=3):
        yield i, j, k, (a[i][k], a[i][j], a[k][j])


def triple_set(A: PCMatrix) -> list[tuple[Elem, Elem, Elem]]:
    return [t for *_, t in triads(A)]


def indicator_of_set(T: IndicatorMap, C: Iterable[tuple[Elem, Elem, Elem]]) -> Elem:
    values = [T.fn(x, y, z) for x, y, z in C]
    if not values:
        raise ValueError("the indicator of an empty triple set is undefined")
    return T.codomain.max(*values)


@dataclass(frozen=True)
class Triad:
    i: int
    j: int
    k: int
    value: Elem


@dataclass(frozen=True)
class TriadReport:
    indicator_value: Elem
    worst: list[Triad]
    consistent: bool
    n: int
    argmax: tuple[int, int, int]

    def to_dict(self) -> dict:
        return {
            "indicator_value": self.indicator_value,
            "consistent": self.consistent,
            "n": self.n,
            "argmax": list(self.argmax),
            "worst": [{"i": t.i, "j": t.j, "k": t.k, "value": t.value} for t in self.worst],
        }


def _rank(G, scored: list[tuple[tuple[int, int, int], Elem]], n: int,
          top: int | None) -> TriadReport:
    best_idx, best = scored[0]
    for idx, v in scored[1:]:
        if G.cmp(v, best) > 0:
            best_idx, best = idx, v
    key = G.sort_key()
    proper = [(idx, v) for idx, v in scored if len(set(idx)) == 3]
    proper.sort(key=lambda item: item[0])
    proper.sort(key=lambda item: key(item[1]), reverse=True)
    if top is not None:
        proper = proper[:top]
    worst = [Triad(i, j, k, v) for (i, j, k), v in proper]
    return TriadReport(best, worst, G.is_identity(best), n, best_idx)


def inconsistency_indicator(T: IndicatorMap, A: PCMatrix, top: int | None = None) -> TriadReport:
    """Worst triad value of ``A`` under ``T`` plus the ranked proper triads."""
    if T.domain is not A.group:
        raise StructureMismatch(f"{T.name} lives on {T.domain.name}, matrix on {A.group.name}")
    require_pc(A)
    f = T.fn
    scored = [((i, j, k), f(*t)) for i, j, k, t in triads(A)]
    return _rank(T.codomain, scored, A.n, top)


def indicator_value(T: IndicatorMap, A: PCMatrix) -> Elem:
    return inconsistency_indicator(T, A, top=0).indicator_value


def indicator_symmetrized_equality(T: IndicatorMap, A: PCMatrix) -> LawReport:
    """Compare the indicator of ``A`` under ``T`` and under its pairwise symmetrization.

    For 3x3 matrices the value is also checked against the three-triad
    decomposition through the symmetrized map.
    """
    G = T.codomain
    report = LawReport(f"symmetrization invariance of {T.name}")
    law = report.law("symmetrized-indicator-equal")
    if A.n < 3:
        law.skipped = "needs n >= 3"
        return report
    Ts = pairwise_symmetrization(T)
    v, vs = indicator_value(T, A), indicator_value(Ts, A)
    law.record(G.eq(v, vs), (v, vs))
    if A.n == 3:
        a = A.entries
        dec = G.max(Ts.fn(a[0][1], a[0][2], a[1][2]),
                    Ts.fn(a[1][0], a[1][2], a[0][2]),
                    Ts.fn(a[0][2], a[0][1], a[2][1]))
        report.law("three-triad-decomposition").record(G.eq(v, dec), (v, dec))
    return report


def indicator_3x3_abelian_shortcut(T: IndicatorMap, A: PCMatrix) -> Elem:
    """``T(a_01, a_02, a_12)``, valid only for absolute-value-induced ``T`` on an abelian group."""
    if A.n != 3:
        raise ShortcutRefused(f"shortcut needs a 3x3 matrix, got {A.n}x{A.n}")
    if T.absolute_value is None:
        raise ShortcutRefused(f"{T.name} is not induced by an absolute value")
    if T.domain is not A.group:
        raise StructureMismatch(f"{T.name} lives on {T.domain.name}, matrix on {A.group.name}")
    if A.group.abelian_hint is False or (
            A.group.abelian_hint is None and find_noncommuting_pair(A.group) is not None):
        raise ShortcutRefused(f"{A.group.name} is not abelian")
    require_pc(A)
    a = A.entries
    return T.fn(a[0][1], a[0][2], a[1][2])


def product_matrix(A: PCMatrix, B: PCMatrix) -> PCMatrix:
    if A.n != B.n:
        raise StructureMismatch(f"orders differ: {A.n} vs {B.n}")
    X = product_group(A.group, B.group)
    rows = [[(A.entries[i][j], B.entries[i][j]) for j in range(A.n)] for i in range(A.n)]
    return PCMatrix(X, rows, A.labels)


def product_matrix_indicator(T1: IndicatorMap, A: PCMatrix, T2: IndicatorMap, B: PCMatrix) -> Elem:
    """Indicator of the paired matrix; raises LawMismatch if it is not the worse component value."""
    C = product_matrix(A, B)
    T = product_indicator(T1, T2)
    value = indicator_value(T, C)
    G = T.codomain
    expected = G.max(indicator_value(T1, A), indicator_value(T2, B))
    if not G.eq(value, expected):
        raise LawMismatch(f"product indicator {value!r} != max of components {expected!r}")
    return value


def additive_indicator(B: PCMatrix, a: float, top: int | None = None) -> TriadReport:
    """Closed-form ``S_a`` indicator of an additive PC matrix.

    Each triad scores ``1 - min{a**t, a**-t}`` with ``t = b_ik + b_kj - b_ij``,
    so the result is 0 exactly when ``b_ij = b_ik + b_kj`` throughout.
    """
    if not (a > 0 and a != 1 and math.isfinite(a)):
        raise ValueError(f"base must be a positive real different from 1, got {a!r}")
    if B.group is not REALS:
        raise StructureMismatch(f"additive indicator needs a matrix over {REALS.name}")
    b, n = B.entries, B.n
    log_a = abs(math.log(a))
    for i in range(n):
        if not approx_eq(b[i][i], 0.0):
            raise InvalidPCMatrix([Violation(i, i, "diagonal", b[i][i], 0.0)])
        for j in range(i):
            if not approx_eq(b[i][j], -b[j][i]):
                raise InvalidPCMatrix([Violation(i, j, "reciprocity", b[i][j], -b[j][i])])
    scored = []
    for i, j, k in itertools.product(range(n), repeat=3):
        t = b[i][k] + b[k][j] - b[i][j]
        # past exp(-700) the smaller power underflows to 0 anyway; skip the overflowing one
        m = 0.0 if abs(t) * log_a > 700 else min(a ** t, a ** -t)
        scored.append(((i, j, k), 1.0 - m))
    return _rank(ADDITIVE_REALS, scored, n, top)
