"""Inconsistency indicator maps ``T: X^3 -> G`` and their constructions.

An indicator map vanishes (equals ``1_G``) exactly on consistent triples
``(x, y, z)`` with ``x . z = y``.  It is interchangeable with a G-metric via
``T(x, y, z) = d(x z, y)`` and ``d(x, y) = T(x, y, 1)``, and with a symmetric
three-point metric ``g_T`` built from pairwise diameters.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import Callable

from pcx.algebra import (
    AloGroup,
    Elem,
    GAbsoluteValue,
    GMetric,
    Group,
    Morphism,
    StructureMismatch,
    check_isomorphism,
    find_noncommuting_pair,
    metric_from_absolute_value,
    product_group,
    transport_absolute_value,
)
from pcx.laws import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    AxiomViolation,
    LawReport,
    Sampler,
    tuples,
)

CHECKED_SAMPLES = 200

_PERMUTATIONS = tuple(itertools.permutations(range(3)))


class Provenance(str, enum.Enum):
    FROM_METRIC = "from-metric"
    FROM_ABSOLUTE_VALUE = "from-absolute-value"
    COMBINATOR = "combinator"
    TRANSPORT = "transport"
    SYMMETRIZATION = "symmetrization"
    CUSTOM = "custom"


class AbelianRequired(ValueError):
    """The requested construction is an indicator map only on abelian groups."""

    def __init__(self, message: str, witness: tuple[Elem, Elem] | None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class IndicatorMap:
    domain: Group
    codomain: AloGroup
    fn: Callable[[Elem, Elem, Elem], Elem]
    provenance: Provenance = Provenance.CUSTOM
    name: str = "T"
    absolute_value: GAbsoluteValue | None = None

    def __call__(self, x: Elem, y: Elem, z: Elem) -> Elem:
        return self.fn(x, y, z)

    @classmethod
    def custom(cls, domain: Group, codomain: AloGroup, fn, name: str = "T",
               checked: bool = True, n_samples: int = CHECKED_SAMPLES,
               seed: int = DEFAULT_SEED) -> IndicatorMap:
        """Wrap a user-supplied map; by default it is rejected unless the axioms hold on samples."""
        return _finish(cls(domain, codomain, fn, Provenance.CUSTOM, name),
                       checked, n_samples, seed)


@dataclass(frozen=True, eq=False)
class G3Metric:
    """A permutation-symmetric three-point distance ``g: X^3 -> G``."""

    codomain: AloGroup
    fn: Callable[[Elem, Elem, Elem], Elem]
    domain: Group | None = None
    name: str = "g"

    def __call__(self, x: Elem, y: Elem, z: Elem) -> Elem:
        return self.fn(x, y, z)


def _finish(T: IndicatorMap, checked: bool, n_samples: int = CHECKED_SAMPLES,
            seed: int = DEFAULT_SEED) -> IndicatorMap:
    if checked:
        report = check_indicator_axioms(T, n_samples=n_samples, seed=seed)
        if not report.passed:
            raise AxiomViolation(report)
    return T


def _same_structures(T1: IndicatorMap, T2: IndicatorMap) -> None:
    if T1.domain is not T2.domain:
        raise StructureMismatch(f"domains differ: {T1.domain.name} vs {T2.domain.name}")
    if T1.codomain is not T2.codomain:
        raise StructureMismatch(f"codomains differ: {T1.codomain.name} vs {T2.codomain.name}")


# -- metric duality ------------------------------------------------------------------

def indicator_from_metric(d: GMetric, checked: bool = False, n_samples: int = CHECKED_SAMPLES,
                          seed: int = DEFAULT_SEED) -> IndicatorMap:
    """``T_d(x, y, z) = d(x z, y)``."""
    X = d.domain
    if not isinstance(X, Group):
        raise StructureMismatch(f"{d.name} is not defined on a group")
    f, op = d.fn, X.op
    prov = Provenance.FROM_ABSOLUTE_VALUE if d.absolute_value else Provenance.FROM_METRIC
    T = IndicatorMap(X, d.codomain, lambda x, y, z: f(op(x, z), y), prov,
                     name=f"T[{d.name}]", absolute_value=d.absolute_value)
    return _finish(T, checked, n_samples, seed)


def indicator_from_absolute_value(v: GAbsoluteValue, checked: bool = False) -> IndicatorMap:
    return indicator_from_metric(metric_from_absolute_value(v, checked=checked), checked=checked)


def metric_from_indicator(T: IndicatorMap) -> GMetric:
    """``d_T(x, y) = T(x, y, 1)``."""
    f, one = T.fn, T.domain.identity
    return GMetric(T.codomain, lambda x, y: f(x, y, one), domain=T.domain,
                   name=f"d[{T.name}]", absolute_value=T.absolute_value)


# -- combinators ---------------------------------------------------------------------

def combine_max(T1: IndicatorMap, T2: IndicatorMap, checked: bool = False) -> IndicatorMap:
    _same_structures(T1, T2)
    G, f1, f2 = T1.codomain, T1.fn, T2.fn
    T = IndicatorMap(T1.domain, G, lambda x, y, z: G.max(f1(x, y, z), f2(x, y, z)),
                     Provenance.COMBINATOR, name=f"max({T1.name}, {T2.name})")
    return _finish(T, checked)


def combine_odot(T1: IndicatorMap, T2: IndicatorMap, checked: bool = False) -> IndicatorMap:
    _same_structures(T1, T2)
    G, f1, f2 = T1.codomain, T1.fn, T2.fn
    T = IndicatorMap(T1.domain, G, lambda x, y, z: G.op(f1(x, y, z), f2(x, y, z)),
                     Provenance.COMBINATOR, name=f"{T1.name} * {T2.name}")
    return _finish(T, checked)


def cap_min(T: IndicatorMap, a: Elem, checked: bool = False) -> IndicatorMap:
    """Truncate ``T`` at a level ``a > 1_G``."""
    G = T.codomain
    G.group.own(a)
    if not G.lt(G.identity, a):
        raise ValueError(f"cap level must exceed the identity of {G.name}, got {a!r}")
    f = T.fn
    S = IndicatorMap(T.domain, G, lambda x, y, z: G.min(f(x, y, z), a),
                     Provenance.COMBINATOR, name=f"min({T.name}, {a!r})")
    return _finish(S, checked)


def product_indicator(T1: IndicatorMap, T2: IndicatorMap, checked: bool = False) -> IndicatorMap:
    """Indicator on ``X1 x X2`` taking the worse of the two component values."""
    if T1.codomain is not T2.codomain:
        raise StructureMismatch(f"codomains differ: {T1.codomain.name} vs {T2.codomain.name}")
    G, f1, f2 = T1.codomain, T1.fn, T2.fn
    T = IndicatorMap(
        product_group(T1.domain, T2.domain), G,
        lambda x, y, z: G.max(f1(x[0], y[0], z[0]), f2(x[1], y[1], z[1])),
        Provenance.COMBINATOR, name=f"{T1.name} x {T2.name}")
    return _finish(T, checked)


def reverse_indicator(T: IndicatorMap, n_samples: int = CHECKED_SAMPLES,
                      seed: int = DEFAULT_SEED) -> IndicatorMap:
    """``S(x, y, z) = T(z, y, x)``, which is an indicator map only on abelian domains."""
    X = T.domain
    if not X.abelian_hint:
        w = find_noncommuting_pair(X, n_samples, seed)
        if w is None and X.abelian_hint is False:
            raise AbelianRequired(f"{X.name} is declared nonabelian", None)
        if w is not None:
            a, b = w
            ab = X.op(a, b)
            raise AbelianRequired(
                f"{X.name} is not abelian: {X.label(a)}.{X.label(b)} != {X.label(b)}.{X.label(a)}; "
                f"reversed map gives {T.fn(b, ab, a)!r} on the consistent triple "
                f"({X.label(a)}, {X.label(ab)}, {X.label(b)}), breaking consistency-iff-identity",
                w)
    f = T.fn
    return IndicatorMap(X, T.codomain, lambda x, y, z: f(z, y, x), Provenance.COMBINATOR,
                        name=f"rev({T.name})", absolute_value=T.absolute_value)


def inverse_indicator(T: IndicatorMap, checked: bool = False) -> IndicatorMap:
    """``T_{-1}(x, y, z) = T(z^-1, y^-1, x^-1)``."""
    f, inv = T.fn, T.domain.inverse
    S = IndicatorMap(T.domain, T.codomain, lambda x, y, z: f(inv(z), inv(y), inv(x)),
                     Provenance.COMBINATOR, name=f"inv({T.name})")
    return _finish(S, checked)


def pairwise_symmetrization(T: IndicatorMap, checked: bool = False) -> IndicatorMap:
    f, inv, G = T.fn, T.domain.inverse, T.codomain
    S = IndicatorMap(T.domain, G,
                     lambda x, y, z: G.max(f(x, y, z), f(inv(z), inv(y), inv(x))),
                     Provenance.SYMMETRIZATION, name=f"sym({T.name})")
    return _finish(S, checked)


def check_pairwise_symmetric(T: IndicatorMap, sampler: Sampler | None = None,
                             n_samples: int = DEFAULT_SAMPLES,
                             seed: int = DEFAULT_SEED) -> LawReport:
    """Check ``T(x, y, z) = T(z^-1, y^-1, x^-1)``; equivalently ``T`` equals its symmetrization."""
    X, G = T.domain, T.codomain
    report = LawReport(f"pairwise symmetry of {T.name}")
    law = report.law("pairwise-symmetric")
    smp, elems = (sampler, None) if sampler else (X.sampler, X.elements)
    triples, law.exhaustive = tuples(3, smp, n_samples, random.Random(seed), elems)
    for x, y, z in triples:
        law.record(G.eq(T.fn(x, y, z), T.fn(X.inverse(z), X.inverse(y), X.inverse(x))), (x, y, z))
    return report


@dataclass
class FullSymmetrization:
    """A fully symmetrized map together with the verdict on whether it is still an indicator."""

    candidate: IndicatorMap
    valid: bool
    report: LawReport
    square_witness: Elem | None = None
    violation_witness: tuple | None = None
    equals_original: bool | None = None


def full_symmetrization(T: IndicatorMap, n_samples: int = DEFAULT_SAMPLES,
                        seed: int = DEFAULT_SEED) -> FullSymmetrization:
    """Maximise ``T`` over all six argument orders and judge the result.

    On a domain where some ``x`` has ``x^2 != 1`` the result cannot be an
    indicator map, and the triple ``(x, x, 1)`` is reported as the place where it
    fails to vanish.  When every element squares to the identity and ``T`` comes
    from an absolute value, the candidate is compared against ``T`` itself.
    """
    X, G, f = T.domain, T.codomain, T.fn

    def tf(x1, x2, x3):
        xs = (x1, x2, x3)
        return G.max(*(f(xs[p[0]], xs[p[1]], xs[p[2]]) for p in _PERMUTATIONS))

    candidate = IndicatorMap(X, G, tf, Provenance.SYMMETRIZATION, name=f"full({T.name})")
    report = check_indicator_axioms(candidate, n_samples=n_samples, seed=seed)

    rng = random.Random(seed)
    pool = X.elements if X.finite else [X.sample(rng) for _ in range(n_samples)]
    square_witness = violation = None
    for x in pool:
        if not X.is_identity(X.op(x, x)):
            square_witness = x
            if not G.is_identity(tf(x, x, X.identity)):
                violation = (x, x, X.identity)
            break

    equals_original = None
    if square_witness is None and T.absolute_value is not None:
        triples, _ = tuples(3, X.sampler, n_samples, random.Random(seed), X.elements)
        equals_original = all(G.eq(tf(x, y, z), f(x, y, z)) for x, y, z in triples)

    valid = report.passed and violation is None
    return FullSymmetrization(candidate, valid, report, square_witness, violation, equals_original)


def transport_indicator(phi: Morphism, T: IndicatorMap, checked: bool = True,
                        n_samples: int = CHECKED_SAMPLES, seed: int = DEFAULT_SEED) -> IndicatorMap:
    """Pull ``T`` back along a group isomorphism ``phi: Y -> T.domain``."""
    if phi.target is not T.domain:
        raise StructureMismatch(f"{phi.name} does not land in {T.domain.name}")
    if not isinstance(phi.source, Group):
        raise StructureMismatch(f"{phi.name} must start from a group")
    if checked:
        check_isomorphism(phi, n_samples, seed)
    f, p = T.fn, phi.forward
    absval = None
    if T.absolute_value is not None:
        absval = transport_absolute_value(phi, T.absolute_value, checked=False)
    return IndicatorMap(phi.source, T.codomain, lambda a, b, c: f(p(a), p(b), p(c)),
                        Provenance.TRANSPORT, name=f"{T.name} o {phi.name}",
                        absolute_value=absval)


def is_bounded_by(T: IndicatorMap, a: Elem, sampler: Sampler | None = None,
                  n_samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> LawReport:
    G, X = T.codomain, T.domain
    G.group.own(a)
    report = LawReport(f"{T.name} bounded by {a!r}")
    law = report.law("bounded")
    smp, elems = (sampler, None) if sampler else (X.sampler, X.elements)
    triples, law.exhaustive = tuples(3, smp, n_samples, random.Random(seed), elems)
    for x, y, z in triples:
        law.record(G.le(T.fn(x, y, z), a), (x, y, z))
    return report


# -- three-point metrics ----------------------------------------------------------------

def g3_from_indicator(T: IndicatorMap) -> G3Metric:
    """``g_T(x, y, z) = max{T(x, y, 1), T(x, z, 1), T(y, z, 1)}``."""
    f, one, G = T.fn, T.domain.identity, T.codomain
    return G3Metric(G, lambda x, y, z: G.max(f(x, y, one), f(x, z, one), f(y, z, one)),
                    domain=T.domain, name=f"g[{T.name}]")


def indicator_from_g3(g: G3Metric, domain: Group | None = None, checked: bool = False) -> IndicatorMap:
    """Recover ``T(x, y, z) = max{g(xz, y, y), g(xz, xz, y)}``."""
    X = domain or g.domain
    if not isinstance(X, Group):
        raise StructureMismatch("recovering an indicator needs a group domain")
    G, h, op = g.codomain, g.fn, X.op

    def T(x, y, z):
        xz = op(x, z)
        return G.max(h(xz, y, y), h(xz, xz, y))

    return _finish(IndicatorMap(X, G, T, Provenance.FROM_METRIC, name=f"T[{g.name}]"), checked)


# -- law checks ----------------------------------------------------------------------------

def check_indicator_axioms(T: IndicatorMap, sampler: Sampler | None = None,
                           n_samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> LawReport:
    X, G, f = T.domain, T.codomain, T.fn
    smp, elems = (sampler, None) if sampler else (X.sampler, X.elements)
    report = LawReport(f"indicator {T.name}")
    ident, transl, sub, nonneg = (report.law(n) for n in (
        "consistency-iff-identity", "translation", "subadditivity", "nonnegativity"))
    one = X.identity

    rng = random.Random(seed)
    triples, exhaustive = tuples(3, smp, n_samples, rng, elems)
    for a, b, c in triples:
        ac = X.op(a, c)
        t = f(a, b, c)
        ident.record(G.is_identity(t) == X.eq(ac, b), (a, b, c))
        if not exhaustive:
            # a random b is almost never consistent, so probe the consistent triple as well
            ident.record(G.is_identity(f(a, ac, c)), (a, ac, c))
        transl.record(G.eq(t, f(b, ac, one)), (a, b, c))
        nonneg.record(G.le(G.identity, t), (a, b, c))
    for ch in (ident, transl, nonneg):
        ch.exhaustive = exhaustive

    quintuples, sub.exhaustive = tuples(5, smp, n_samples, random.Random(seed + 1), elems)
    for a, b, c, d, e in quintuples:
        sub.record(G.le(f(a, X.op(d, e), c), G.op(f(a, b, c), f(d, b, e))), (a, b, c, d, e))
    return report


def check_g3_axioms(g: G3Metric, sampler: Sampler | None = None,
                    n_samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> LawReport:
    X, G, h = g.domain, g.codomain, g.fn
    if sampler is None and X is None:
        raise ValueError("a sampler is required when the domain is unknown")
    smp, elems = (sampler, None) if sampler else (X.sampler, X.elements)
    eq = X.eq if X is not None else (lambda p, q: p == q)
    report = LawReport(f"3-metric {g.name}")
    diag, pos, mono, perm, rect = (report.law(n) for n in (
        "diagonal-identity", "positivity", "monotonicity", "permutation-symmetry", "rectangle"))
    quads, exhaustive = tuples(4, smp, n_samples, random.Random(seed), elems)
    for x, y, z, a in quads:
        diag.record(G.is_identity(h(x, x, x)), (x, x, x))
        gxxy = h(x, x, y)
        if not eq(x, y):
            pos.record(G.lt(G.identity, gxxy), (x, x, y))
        gxyz = h(x, y, z)
        if not eq(z, y):
            mono.record(G.le(gxxy, gxyz), (x, y, z))
        xs = (x, y, z)
        perm.record(all(G.eq(gxyz, h(xs[p[0]], xs[p[1]], xs[p[2]])) for p in _PERMUTATIONS),
                    (x, y, z))
        rect.record(G.le(gxyz, G.op(h(x, a, a), h(a, y, z))), (x, y, z, a))
    for c in report.checks:
        c.exhaustive = exhaustive
    return report
