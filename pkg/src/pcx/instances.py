"""Concrete structures: the real groups, the Koczkodaj indicator and its relatives,
the three-level metric, and the small finite groups used as test beds.

Everything here is built once and shared; structure identity matters because
indicators, matrices and metrics are matched against their domains with ``is``.
"""

from __future__ import annotations

import functools
import math
import numbers
import operator
import random
from dataclasses import dataclass, field

from pcx.algebra import (
    AloGroup,
    Elem,
    GAbsoluteValue,
    GMetric,
    Group,
    Morphism,
    Order,
    approx_eq,
    approx_eq_rel,
    check_absvalue_axioms,
    check_isomorphism,
    check_metric_axioms,
    finite_group,
    metric_from_absolute_value,
    norm_absolute_value,
    norm_induced_metric,
    real_cmp,
    transport_absolute_value,
    transport_metric,
)
from pcx.indicators import (
    G3Metric,
    IndicatorMap,
    Provenance,
    check_g3_axioms,
    check_indicator_axioms,
    g3_from_indicator,
    indicator_from_metric,
    inverse_indicator,
    pairwise_symmetrization,
    product_indicator,
)
from pcx.laws import AxiomViolation, LawReport

_LOG_1000 = math.log(1000.0)


def _is_real(x) -> bool:
    return isinstance(x, numbers.Real) and not isinstance(x, bool) and math.isfinite(x)


def _is_positive_real(x) -> bool:
    return _is_real(x) and x > 0


def sample_real(rng: random.Random) -> float:
    # a share of half-integers so that exact coincidences (x + z == y, x == -y) get exercised
    if rng.random() < 0.3:
        return rng.randint(-8, 8) / 2
    return rng.uniform(-10.0, 10.0)


def sample_positive(rng: random.Random) -> float:
    if rng.random() < 0.3:
        return 2.0 ** rng.randint(-4, 4)
    return math.exp(rng.uniform(-_LOG_1000, _LOG_1000))


REALS = Group(
    name="R(+)",
    eq=approx_eq,
    contains=_is_real,
    sampler=sample_real,
    op=operator.add,
    identity=0.0,
    inverse=operator.neg,
    abelian_hint=True,
)

POSITIVE_REALS = Group(
    name="R+(*)",
    eq=approx_eq_rel,
    contains=_is_positive_real,
    sampler=sample_positive,
    op=operator.mul,
    identity=1.0,
    inverse=lambda x: 1.0 / x,
    abelian_hint=True,
)

ADDITIVE_REALS = AloGroup(REALS, real_cmp, "additive reals")


def _rel_cmp(x: float, y: float) -> Order:
    if approx_eq_rel(x, y):
        return Order.EQ
    return Order.LT if x < y else Order.GT


MULTIPLICATIVE_REALS = AloGroup(POSITIVE_REALS, _rel_cmp, "multiplicative positive reals")

KLEIN_FOUR = finite_group(
    "V4",
    ("e", "a", "b", "c"),
    (
        (0, 1, 2, 3),
        (1, 0, 3, 2),
        (2, 3, 0, 1),
        (3, 2, 1, 0),
    ),
)

# product p.q applies q first, then p
S3 = finite_group(
    "S3",
    ("()", "(12)", "(13)", "(23)", "(123)", "(132)"),
    (
        (0, 1, 2, 3, 4, 5),
        (1, 0, 5, 4, 3, 2),
        (2, 4, 0, 5, 1, 3),
        (3, 5, 4, 0, 2, 1),
        (4, 2, 3, 1, 5, 0),
        (5, 3, 1, 2, 0, 4),
    ),
)


# -- Koczkodaj family ---------------------------------------------------------------------

def _ki_abs(x: float) -> float:
    return 1.0 - min(x, 1.0 / x)


KI_ABSOLUTE_VALUE = GAbsoluteValue(ADDITIVE_REALS, POSITIVE_REALS, _ki_abs, name="v_KI")


def ki_absolute_value() -> GAbsoluteValue:
    """``v(x) = 1 - min{x, 1/x}`` on the positive reals."""
    return KI_ABSOLUTE_VALUE


@functools.lru_cache(maxsize=None)
def ki_metric() -> GMetric:
    return metric_from_absolute_value(KI_ABSOLUTE_VALUE, checked=False)


def ki(x: float, y: float, z: float) -> float:
    """Koczkodaj's triad indicator ``1 - min{y/(xz), xz/y}``."""
    if not (x > 0 and y > 0 and z > 0):
        raise ValueError(f"KI needs positive arguments, got {(x, y, z)!r}")
    p = x * z
    return 1.0 - min(y / p, p / y)


KI = IndicatorMap(POSITIVE_REALS, ADDITIVE_REALS, ki, Provenance.FROM_ABSOLUTE_VALUE,
                  name="KI", absolute_value=KI_ABSOLUTE_VALUE)


def ki_indicator() -> IndicatorMap:
    return KI


def _check_base(a: float) -> float:
    if not _is_positive_real(a) or a == 1:
        raise ValueError(f"base must be a positive real different from 1, got {a!r}")
    return float(a)


@functools.lru_cache(maxsize=None)
def exp_isomorphism(a: float) -> Morphism:
    """``x -> a**x`` from the additive reals onto the positive reals, inverse ``log_a``."""
    a = _check_base(a)
    log_a = math.log(a)
    return Morphism(forward=lambda x: a ** x, source=REALS, target=POSITIVE_REALS,
                    backward=lambda y: math.log(y) / log_a, name=f"exp_{a:g}")


@functools.lru_cache(maxsize=None)
def w_absolute_value(a: float) -> GAbsoluteValue:
    """``w_a(x) = v(a**x) = 1 - min{a**x, a**-x}``."""
    return transport_absolute_value(exp_isomorphism(a), KI_ABSOLUTE_VALUE)


@functools.lru_cache(maxsize=None)
def rho_metric(a: float) -> GMetric:
    return transport_metric(exp_isomorphism(a), ki_metric())


@functools.lru_cache(maxsize=None)
def s_a_indicator(a: float) -> IndicatorMap:
    """``S_a(x, y, z) = 1 - min{a**(x+z-y), a**(y-x-z)}`` on the additive reals."""
    a = _check_base(a)
    # min{a**t, a**-t} == a**-|t| for a > 1 and a**|t| for a < 1; never overflows
    sign = -1.0 if a > 1 else 1.0

    def S(x, y, z):
        return 1.0 - a ** (sign * abs(x + z - y))

    return IndicatorMap(REALS, ADDITIVE_REALS, S, Provenance.TRANSPORT, name=f"S_{a:g}",
                        absolute_value=w_absolute_value(a))


# -- three-level metric ---------------------------------------------------------------------

def three_level_metric(G: AloGroup = ADDITIVE_REALS, a: Elem = 1, b: Elem = 2,
                       c: Elem = 3) -> GMetric:
    """Metric on ``G`` taking ``a`` inside ``{x >= 1_G}``, ``b`` inside ``{x < 1_G}``, ``c`` across."""
    for p in (a, b, c):
        G.group.own(p)
    if not (G.lt(G.identity, a) and G.lt(a, b) and G.lt(b, c)):
        raise ValueError(f"three-level metric needs 1 < a < b < c, got {(a, b, c)!r}")
    one, le, eq = G.identity, G.le, G.group.eq

    def rho(x, y):
        if eq(x, y):
            return one
        upper_x, upper_y = le(one, x), le(one, y)
        if upper_x and upper_y:
            return a
        if not upper_x and not upper_y:
            return b
        return c

    return GMetric(G, rho, domain=G.group, name=f"rho[{a},{b},{c}]")


@functools.lru_cache(maxsize=None)
def three_level_indicator(a: Elem = 1, b: Elem = 2, c: Elem = 3) -> IndicatorMap:
    return indicator_from_metric(three_level_metric(ADDITIVE_REALS, a, b, c))


# -- discrete and finite-group structures ----------------------------------------------------

@functools.lru_cache(maxsize=None)
def discrete_absolute_value(X: Group) -> GAbsoluteValue:
    """0 at the identity, 1 elsewhere; induces the 0/1 discrete metric."""
    return GAbsoluteValue(ADDITIVE_REALS, X, lambda x: 0.0 if X.is_identity(x) else 1.0,
                          name=f"discrete[{X.name}]")


@functools.lru_cache(maxsize=None)
def discrete_metric(X: Group) -> GMetric:
    return metric_from_absolute_value(discrete_absolute_value(X))


@functools.lru_cache(maxsize=None)
def discrete_indicator(X: Group) -> IndicatorMap:
    return indicator_from_metric(discrete_metric(X))


@functools.lru_cache(maxsize=None)
def klein_absolute_value(weights: tuple[float, float, float] = (1.0, 2.0, 3.0)) -> GAbsoluteValue:
    """Absolute value on V4 with ``v(e) = 0`` and the given positive weights on a, b, c."""
    values = (0.0,) + tuple(float(w) for w in weights)
    v = GAbsoluteValue(ADDITIVE_REALS, KLEIN_FOUR, lambda x: values[x],
                       name=f"v_V4{tuple(weights)}")
    report = check_absvalue_axioms(v)
    if not report.passed:
        raise AxiomViolation(report)
    return v


@functools.lru_cache(maxsize=None)
def klein_indicator(weights: tuple[float, float, float] = (1.0, 2.0, 3.0)) -> IndicatorMap:
    return indicator_from_metric(metric_from_absolute_value(klein_absolute_value(weights)))


# -- catalog ---------------------------------------------------------------------------------

@dataclass
class InstanceCatalog:
    groups: dict[str, Group] = field(default_factory=dict)
    alo_groups: dict[str, AloGroup] = field(default_factory=dict)
    isomorphisms: dict[str, Morphism] = field(default_factory=dict)
    absolute_values: dict[str, GAbsoluteValue] = field(default_factory=dict)
    metrics: dict[str, GMetric] = field(default_factory=dict)
    indicators: dict[str, IndicatorMap] = field(default_factory=dict)
    g3_metrics: dict[str, G3Metric] = field(default_factory=dict)

    def check_all(self, n_samples: int = 1000, seed: int = 42) -> list[LawReport]:
        """Run the law suite appropriate to every registered object."""
        from pcx.algebra import check_alo_axioms, check_group_axioms

        reports = []
        for key, X in self.groups.items():
            reports.append(_tagged(f"group:{key}", check_group_axioms(X, n_samples=n_samples, seed=seed)))
        for key, G in self.alo_groups.items():
            reports.append(_tagged(f"alo:{key}", check_alo_axioms(G, n_samples=n_samples, seed=seed)))
        for key, phi in self.isomorphisms.items():
            reports.append(_isomorphism_report(key, phi, n_samples, seed))
        for key, v in self.absolute_values.items():
            reports.append(_tagged(f"absval:{key}", check_absvalue_axioms(v, n_samples=n_samples, seed=seed)))
        for key, d in self.metrics.items():
            reports.append(_tagged(f"metric:{key}", check_metric_axioms(d, n_samples=n_samples, seed=seed)))
        for key, T in self.indicators.items():
            reports.append(_tagged(f"indicator:{key}", check_indicator_axioms(T, n_samples=n_samples, seed=seed)))
        for key, g in self.g3_metrics.items():
            reports.append(_tagged(f"g3:{key}", check_g3_axioms(g, n_samples=n_samples, seed=seed)))
        return reports


def _tagged(tag: str, report: LawReport) -> LawReport:
    report.subject = f"{tag} ({report.subject})"
    return report


def _isomorphism_report(key: str, phi: Morphism, n_samples: int, seed: int) -> LawReport:
    report = LawReport(f"iso:{key} ({phi.name})")
    law = report.law("injective-homomorphism")
    try:
        check_isomorphism(phi, n_samples, seed)
        law.record(True, ())
    except ValueError as exc:
        law.record(False, (str(exc),))
    return report


def build_catalog(check: bool = True, n_samples: int = 200, seed: int = 42) -> InstanceCatalog:
    """Assemble the registry; with ``check`` every entry must pass its laws on samples."""
    cat = InstanceCatalog()
    cat.groups.update({"reals": REALS, "positive-reals": POSITIVE_REALS,
                       "V4": KLEIN_FOUR, "S3": S3})
    cat.alo_groups.update({"additive": ADDITIVE_REALS, "multiplicative": MULTIPLICATIVE_REALS})
    bases = {"2": 2.0, "e": math.e, "10": 10.0}
    for key, a in bases.items():
        cat.isomorphisms[f"exp:{key}"] = exp_isomorphism(a)

    cat.absolute_values.update({
        "ki": KI_ABSOLUTE_VALUE,
        "norm:additive": norm_absolute_value(ADDITIVE_REALS),
        "norm:multiplicative": norm_absolute_value(MULTIPLICATIVE_REALS),
        "discrete:S3": discrete_absolute_value(S3),
        "V4": klein_absolute_value(),
    })
    for key, a in bases.items():
        cat.absolute_values[f"w:{key}"] = w_absolute_value(a)

    cat.metrics.update({
        "norm:additive": norm_induced_metric(ADDITIVE_REALS),
        "norm:multiplicative": norm_induced_metric(MULTIPLICATIVE_REALS),
        "ki": ki_metric(),
        "three-level": three_level_metric(),
        "discrete:S3": discrete_metric(S3),
    })
    for key, a in bases.items():
        cat.metrics[f"rho:{key}"] = rho_metric(a)

    three = three_level_indicator()
    disc = discrete_indicator(S3)
    cat.indicators.update({
        "ki": KI,
        "ki-from-metric": indicator_from_metric(ki_metric()),
        "norm:additive": indicator_from_metric(cat.metrics["norm:additive"]),
        "three-level": three,
        "discrete:S3": disc,
        "V4": klein_indicator(),
    })
    for key, a in bases.items():
        cat.indicators[f"sa:{key}"] = s_a_indicator(a)
    cat.indicators.update({
        "product:ki,sa:2": product_indicator(KI, s_a_indicator(2.0)),
        "product:three-level,discrete:S3": product_indicator(three, disc),
        "symmetrized:three-level": pairwise_symmetrization(three),
        "symmetrized:discrete:S3": pairwise_symmetrization(disc),
        "inverse:three-level": inverse_indicator(three),
        "inverse:discrete:S3": inverse_indicator(disc),
        "inverse:ki": inverse_indicator(KI),
    })
    cat.g3_metrics.update({
        "ki": g3_from_indicator(KI),
        "three-level": g3_from_indicator(three),
        "discrete:S3": g3_from_indicator(disc),
        "sa:2": g3_from_indicator(s_a_indicator(2.0)),
    })

    if check:
        failed = [r for r in cat.check_all(n_samples=n_samples, seed=seed) if not r.passed]
        if failed:
            raise AxiomViolation(failed[0])
    return cat


@functools.lru_cache(maxsize=None)
def catalog() -> InstanceCatalog:
    """The shared, checked registry."""
    return build_catalog(check=True)


def negative_controls() -> InstanceCatalog:
    """Deliberately broken structures; every one of them must fail its law suite."""
    cat = InstanceCatalog()
    cat.alo_groups["order-by-magnitude"] = AloGroup(
        POSITIVE_REALS,
        lambda x, y: real_cmp(abs(math.log(x)), abs(math.log(y))),
        "positive reals ordered by |log x|",
    )
    cat.absolute_values["identity-map"] = GAbsoluteValue(
        ADDITIVE_REALS, REALS, lambda x: x, name="v(x)=x")
    cat.metrics["sum"] = GMetric(ADDITIVE_REALS, operator.add, domain=REALS, name="d(x,y)=x+y")
    cat.indicators["wrong-consistency"] = IndicatorMap(
        REALS, ADDITIVE_REALS, lambda x, y, z: abs(x + y - z), name="T(x,y,z)=|x+y-z|")
    cat.g3_metrics["first-pair-only"] = G3Metric(
        ADDITIVE_REALS, lambda x, y, z: abs(x - y), domain=REALS, name="g(x,y,z)=|x-y|")
    return cat
