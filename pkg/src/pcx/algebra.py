"""Groups, abelian linearly ordered groups, G-metrics and G-absolute values.

Elements are plain Python values interpreted by their owning structure:
finite floats for the real groups, integer codes for Cayley-table groups and
pairs for direct products.  Structures are immutable; every operation here is
a pure function of its arguments.
"""

from __future__ import annotations

import enum
import functools
import itertools
import operator
import random
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from pcx.laws import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    AxiomViolation,
    LawReport,
    Sampler,
    tuples,
)

EPS_ABS = 1e-9
EPS_REL = 1e-9

Elem = Any


class ForeignElementError(ValueError):
    """An element was handed to a structure that does not own it."""


class StructureMismatch(ValueError):
    """Two objects that must share a domain or codomain do not."""


def approx_eq(x: float, y: float) -> bool:
    """Real equality contract: |x - y| <= eps_abs + eps_rel * max(|x|, |y|)."""
    if x == y:
        return True
    return abs(x - y) <= EPS_ABS + EPS_REL * max(abs(x), abs(y))


def approx_eq_rel(x: float, y: float) -> bool:
    """Scale-free equality for multiplicative groups: |x - y| <= eps_rel * max(|x|, |y|)."""
    return x == y or abs(x - y) <= EPS_REL * max(abs(x), abs(y))


class Order(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def real_cmp(x: float, y: float) -> Order:
    if approx_eq(x, y):
        return Order.EQ
    return Order.LT if x < y else Order.GT


def _always(_x: Any) -> bool:
    return True


@dataclass(frozen=True, eq=False, kw_only=True)
class Carrier:
    """A set with an equality predicate, a membership test and a way to draw elements."""

    name: str
    eq: Callable[[Elem, Elem], bool] = operator.eq
    contains: Callable[[Elem], bool] = _always
    sampler: Sampler | None = None
    elements: tuple | None = None
    labels: tuple[str, ...] | None = None

    @property
    def finite(self) -> bool:
        return self.elements is not None

    @property
    def order(self) -> int | None:
        return None if self.elements is None else len(self.elements)

    def owns(self, x: Elem) -> bool:
        try:
            return bool(self.contains(x))
        except (TypeError, ValueError):
            return False

    def own(self, x: Elem) -> Elem:
        if not self.owns(x):
            raise ForeignElementError(f"{x!r} is not an element of {self.name}")
        return x

    def sample(self, rng: random.Random) -> Elem:
        if self.sampler is not None:
            return self.sampler(rng)
        if self.elements is not None:
            return rng.choice(self.elements)
        raise ValueError(f"{self.name} has no sampler")

    def label(self, x: Elem) -> str:
        if self.labels is not None and isinstance(x, int):
            return self.labels[x]
        return repr(x)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


@dataclass(frozen=True, eq=False, kw_only=True)
class Group(Carrier):
    """A (possibly nonabelian) group ``<X, .>``."""

    op: Callable[[Elem, Elem], Elem]
    identity: Elem
    inverse: Callable[[Elem], Elem]
    abelian_hint: bool | None = None

    def mul(self, *xs: Elem) -> Elem:
        return functools.reduce(self.op, xs, self.identity)

    def is_identity(self, x: Elem) -> bool:
        return self.eq(x, self.identity)


def finite_group(name: str, labels: Sequence[str], table: Sequence[Sequence[int]],
                 abelian_hint: bool | None = None) -> Group:
    """Build a group from an explicit Cayley table over codes ``0..n-1``.

    The table is validated as a group (closure, associativity, identity, inverses).
    """
    n = len(labels)
    rows = tuple(tuple(int(v) for v in row) for row in table)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError("Cayley table must be n x n for n labels")
    if any(not 0 <= v < n for r in rows for v in r):
        raise ValueError("Cayley table entries must be element codes")
    identity = next((e for e in range(n)
                     if all(rows[e][x] == x == rows[x][e] for x in range(n))), None)
    if identity is None:
        raise ValueError(f"{name}: Cayley table has no identity")
    inverses = []
    for x in range(n):
        inv = [y for y in range(n) if rows[x][y] == identity]
        if len(inv) != 1 or rows[inv[0]][x] != identity:
            raise ValueError(f"{name}: element {labels[x]} has no two-sided inverse")
        inverses.append(inv[0])
    for a, b, c in itertools.product(range(n), repeat=3):
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise ValueError(f"{name}: not associative at {(labels[a], labels[b], labels[c])}")
    if abelian_hint is None:
        abelian_hint = all(rows[a][b] == rows[b][a] for a in range(n) for b in range(n))
    inv_t = tuple(inverses)
    return Group(
        name=name,
        elements=tuple(range(n)),
        labels=tuple(labels),
        contains=lambda x: isinstance(x, int) and not isinstance(x, bool) and 0 <= x < n,
        op=lambda a, b: rows[a][b],
        identity=identity,
        inverse=lambda a: inv_t[a],
        abelian_hint=abelian_hint,
    )


@functools.lru_cache(maxsize=None)
def product_group(first: Group, second: Group) -> Group:
    """Direct product with componentwise operation; cached so equal inputs share one object."""
    elements = None
    labels = None
    if first.finite and second.finite:
        elements = tuple(itertools.product(first.elements, second.elements))
    sampler = None
    if (first.sampler or first.finite) and (second.sampler or second.finite):
        sampler = lambda rng: (first.sample(rng), second.sample(rng))  # noqa: E731
    hint = None
    if first.abelian_hint is not None and second.abelian_hint is not None:
        hint = first.abelian_hint and second.abelian_hint
    return Group(
        name=f"{first.name} x {second.name}",
        eq=lambda x, y: first.eq(x[0], y[0]) and second.eq(x[1], y[1]),
        contains=lambda x: (isinstance(x, tuple) and len(x) == 2
                            and first.owns(x[0]) and second.owns(x[1])),
        sampler=sampler,
        elements=elements,
        labels=labels,
        op=lambda x, y: (first.op(x[0], y[0]), second.op(x[1], y[1])),
        identity=(first.identity, second.identity),
        inverse=lambda x: (first.inverse(x[0]), second.inverse(x[1])),
        abelian_hint=hint,
    )


def find_noncommuting_pair(group: Group, n_samples: int = 200,
                           seed: int = DEFAULT_SEED) -> tuple[Elem, Elem] | None:
    """Search for ``a, b`` with ``ab != ba``; exhaustive on small finite groups."""
    rng = random.Random(seed)
    pairs, _ = tuples(2, group.sampler, n_samples, rng, group.elements)
    for a, b in pairs:
        if not group.eq(group.op(a, b), group.op(b, a)):
            return (a, b)
    return None


def is_abelian(group: Group, n_samples: int = 200, seed: int = DEFAULT_SEED) -> bool:
    if group.abelian_hint is not None:
        return group.abelian_hint
    return find_noncommuting_pair(group, n_samples, seed) is None


@dataclass(frozen=True, eq=False)
class AloGroup:
    """Abelian linearly ordered group ``<<G, (.)>, <=>``, the codomain of every measurement."""

    group: Group
    cmp: Callable[[Elem, Elem], Order]
    name: str = ""

    def __post_init__(self):
        if not self.name:
            object.__setattr__(self, "name", self.group.name)

    @property
    def identity(self) -> Elem:
        return self.group.identity

    def op(self, x: Elem, y: Elem) -> Elem:
        return self.group.op(x, y)

    def inverse(self, x: Elem) -> Elem:
        return self.group.inverse(x)

    def eq(self, x: Elem, y: Elem) -> bool:
        return self.cmp(x, y) == Order.EQ

    def le(self, x: Elem, y: Elem) -> bool:
        return self.cmp(x, y) != Order.GT

    def lt(self, x: Elem, y: Elem) -> bool:
        return self.cmp(x, y) == Order.LT

    def max(self, *xs: Elem) -> Elem:
        best = xs[0]
        for x in xs[1:]:
            if self.cmp(x, best) == Order.GT:
                best = x
        return best

    def min(self, *xs: Elem) -> Elem:
        best = xs[0]
        for x in xs[1:]:
            if self.cmp(x, best) == Order.LT:
                best = x
        return best

    def is_identity(self, x: Elem) -> bool:
        return self.cmp(x, self.group.identity) == Order.EQ

    def sort_key(self):
        return functools.cmp_to_key(self.cmp)

    def __repr__(self) -> str:
        return f"<AloGroup {self.name}>"


def _same(a: Any, b: Any) -> bool:
    return a is b


@dataclass(frozen=True, eq=False)
class GMetric:
    """A G-metric ``d: X^2 -> G``.

    ``absolute_value`` is set when the metric was induced by a G-absolute value,
    which later gates shortcuts that only hold for such metrics.
    """

    codomain: AloGroup
    fn: Callable[[Elem, Elem], Elem]
    domain: Carrier | None = None
    name: str = "d"
    absolute_value: GAbsoluteValue | None = None

    def __call__(self, x: Elem, y: Elem) -> Elem:
        return self.fn(x, y)


@dataclass(frozen=True, eq=False)
class GAbsoluteValue:
    codomain: AloGroup
    domain: Group
    fn: Callable[[Elem], Elem]
    name: str = "v"

    def __call__(self, x: Elem) -> Elem:
        return self.fn(x)


@dataclass(frozen=True, eq=False)
class Morphism:
    """A map between carriers; ``backward`` is its inverse when known."""

    forward: Callable[[Elem], Elem]
    source: Carrier
    target: Carrier
    backward: Callable[[Elem], Elem] | None = None
    name: str = "phi"

    def __call__(self, x: Elem) -> Elem:
        return self.forward(x)


# -- norms and induced metrics ---------------------------------------------------

def gnorm(G: AloGroup, x: Elem) -> Elem:
    """``||x|| = max{x, x^-1}``."""
    G.group.own(x)
    return G.max(x, G.inverse(x))


def norm_induced_metric(G: AloGroup) -> GMetric:
    def d(x, y):
        q = G.op(x, G.inverse(y))
        return G.max(q, G.inverse(q))
    return GMetric(G, d, domain=G.group, name=f"norm metric on {G.name}")


def norm_absolute_value(G: AloGroup) -> GAbsoluteValue:
    return GAbsoluteValue(G, G.group, lambda x: G.max(x, G.inverse(x)),
                          name=f"norm on {G.name}")


def metric_from_absolute_value(v: GAbsoluteValue, checked: bool = True,
                               n_samples: int = 200, seed: int = DEFAULT_SEED) -> GMetric:
    """``d_v(x, y) = max{v(x y^-1), v(y x^-1)}``.

    With ``checked`` the absolute-value laws of ``v`` are spot-checked first
    (skipped when the domain cannot be sampled).
    """
    if not isinstance(v.domain, Group):
        raise StructureMismatch("an absolute value needs a group as its domain")
    X, G = v.domain, v.codomain
    if checked and (X.sampler is not None or X.finite):
        report = check_absvalue_axioms(v, n_samples=n_samples, seed=seed)
        if not report.passed:
            raise AxiomViolation(report)

    def d(x, y):
        return G.max(v.fn(X.op(x, X.inverse(y))), v.fn(X.op(y, X.inverse(x))))
    return GMetric(G, d, domain=X, name=f"d[{v.name}]", absolute_value=v)


def _injectivity_witness(phi: Morphism, n_samples: int, seed: int):
    src, tgt = phi.source, phi.target
    rng = random.Random(seed)
    if src.finite and len(src.elements) <= 256:
        pool = list(src.elements)
    else:
        pool = [src.sample(rng) for _ in range(min(n_samples, 256))]
    images = [phi.forward(x) for x in pool]
    for (x, fx), (y, fy) in itertools.combinations(zip(pool, images), 2):
        if tgt.eq(fx, fy) and not src.eq(x, y):
            return (x, y)
    return None


def _homomorphism_witness(phi: Morphism, n_samples: int, seed: int):
    src, tgt = phi.source, phi.target
    if not (isinstance(src, Group) and isinstance(tgt, Group)):
        raise StructureMismatch("a homomorphism needs groups on both sides")
    rng = random.Random(seed)
    pairs, _ = tuples(2, src.sampler, n_samples, rng, src.elements)
    for x, y in pairs:
        if not tgt.eq(phi.forward(src.op(x, y)), tgt.op(phi.forward(x), phi.forward(y))):
            return (x, y)
    return None


def check_isomorphism(phi: Morphism, n_samples: int = 200, seed: int = DEFAULT_SEED) -> None:
    """Raise ValueError if sampling shows ``phi`` is not an injective homomorphism."""
    w = _homomorphism_witness(phi, n_samples, seed)
    if w is not None:
        raise ValueError(f"{phi.name} breaks the homomorphism law at {w!r}")
    w = _injectivity_witness(phi, n_samples, seed)
    if w is not None:
        raise ValueError(f"{phi.name} is not injective: {w[0]!r} and {w[1]!r} collide")


def transport_metric(phi: Morphism, d: GMetric, checked: bool = True,
                     n_samples: int = 200, seed: int = DEFAULT_SEED) -> GMetric:
    """Pull ``d`` back along an injection: ``rho(x, y) = d(phi(x), phi(y))``."""
    if checked:
        w = _injectivity_witness(phi, n_samples, seed)
        if w is not None:
            raise ValueError(f"{phi.name} is not injective: {w[0]!r} and {w[1]!r} collide")
    f, g = phi.forward, d.fn
    return GMetric(d.codomain, lambda x, y: g(f(x), f(y)), domain=phi.source,
                   name=f"{d.name} o {phi.name}")


def transport_absolute_value(phi: Morphism, v: GAbsoluteValue, checked: bool = True,
                             n_samples: int = 200, seed: int = DEFAULT_SEED) -> GAbsoluteValue:
    """``w = v o phi`` along a group isomorphism."""
    if not _same(phi.target, v.domain):
        raise StructureMismatch(f"{phi.name} does not land in {v.domain.name}")
    if checked:
        check_isomorphism(phi, n_samples, seed)
    f, g = phi.forward, v.fn
    return GAbsoluteValue(v.codomain, phi.source, lambda x: g(f(x)),
                          name=f"{v.name} o {phi.name}")


# -- law checks --------------------------------------------------------------------

def _sampler_for(carrier: Carrier | None, sampler: Sampler | None) -> tuple[Sampler | None, tuple | None]:
    if sampler is not None:
        return sampler, None
    if carrier is None:
        raise ValueError("a sampler is required when the domain is unknown")
    return carrier.sampler, carrier.elements


def check_group_axioms(X: Group, sampler: Sampler | None = None,
                       n_samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> LawReport:
    rng = random.Random(seed)
    report = LawReport(f"group {X.name}")
    smp, elems = _sampler_for(X, sampler)
    ident, inv, assoc, refl, symm = (report.law(n) for n in (
        "identity", "inverse", "associativity", "eq-reflexive", "eq-symmetric"))
    triples, exhaustive = tuples(3, smp, n_samples, rng, elems)
    for x, y, z in triples:
        ident.record(X.eq(X.op(X.identity, x), x) and X.eq(X.op(x, X.identity), x), (x,))
        inv.record(X.is_identity(X.op(x, X.inverse(x)))
                   and X.is_identity(X.op(X.inverse(x), x)), (x,))
        assoc.record(X.eq(X.op(X.op(x, y), z), X.op(x, X.op(y, z))), (x, y, z))
        refl.record(X.eq(x, x), (x,))
        symm.record(X.eq(x, y) == X.eq(y, x), (x, y))
    for c in report.checks:
        c.exhaustive = exhaustive
    return report


def check_alo_axioms(G: AloGroup, sampler: Sampler | None = None,
                     n_samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> LawReport:
    """Group laws, commutativity, total order consistent with equality, translation invariance."""
    report = check_group_axioms(G.group, sampler, n_samples, seed)
    report.subject = f"alo-group {G.name}"
    rng = random.Random(seed + 1)
    smp, elems = _sampler_for(G.group, sampler)
    names = ("abelian", "order-antisymmetric", "order-consistent-with-eq",
             "order-transitive", "translation-invariant")
    abel, anti, cons, trans, transl = (report.law(n) for n in names)
    triples, exhaustive = tuples(3, smp, n_samples, rng, elems)
    X = G.group
    for a, b, c in triples:
        abel.record(X.eq(G.op(a, b), G.op(b, a)), (a, b))
        anti.record(G.cmp(a, b) == -G.cmp(b, a), (a, b))
        cons.record((G.cmp(a, b) == Order.EQ) == X.eq(a, b), (a, b))
        if G.le(a, b) and G.le(b, c):
            trans.record(G.le(a, c), (a, b, c))
        else:
            trans.samples += 1
        if G.le(a, b):
            transl.record(G.le(G.op(a, c), G.op(b, c)), (a, b, c))
        else:
            transl.record(G.le(G.op(b, c), G.op(a, c)), (b, a, c))
    for check in report.checks[-5:]:
        check.exhaustive = exhaustive
    return report


def check_metric_axioms(d: GMetric, sampler: Sampler | None = None,
                        n_samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> LawReport:
    rng = random.Random(seed)
    G = d.codomain
    X = d.domain
    smp, elems = _sampler_for(X, sampler)
    eq = X.eq if X is not None else operator.eq
    report = LawReport(f"metric {d.name}")
    ident, symm, tri, nonneg = (report.law(n) for n in (
        "identity-of-indiscernibles", "symmetry", "triangle", "nonnegativity"))
    triples, exhaustive = tuples(3, smp, n_samples, rng, elems)
    for x, y, z in triples:
        dxy = d.fn(x, y)
        ident.record(G.is_identity(d.fn(x, x)), (x, x))
        ident.record(G.is_identity(dxy) == eq(x, y), (x, y))
        symm.record(G.eq(dxy, d.fn(y, x)), (x, y))
        tri.record(G.le(dxy, G.op(d.fn(x, z), d.fn(z, y))), (x, y, z))
        nonneg.record(G.le(G.identity, dxy), (x, y))
    for c in report.checks:
        c.exhaustive = exhaustive
    return report


def check_absvalue_axioms(v: GAbsoluteValue, sampler: Sampler | None = None,
                          n_samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> LawReport:
    rng = random.Random(seed)
    G, X = v.codomain, v.domain
    smp, elems = _sampler_for(X, sampler)
    report = LawReport(f"absolute value {v.name}")
    nonneg, definite, sub = (report.law(n) for n in (
        "nonnegativity", "definiteness", "subadditivity"))
    definite.record(G.is_identity(v.fn(X.identity)), (X.identity,))
    pairs, exhaustive = tuples(2, smp, n_samples, rng, elems)
    for x, y in pairs:
        vx = v.fn(x)
        nonneg.record(G.le(G.identity, vx), (x,))
        definite.record(G.is_identity(vx) == X.is_identity(x), (x,))
        sub.record(G.le(v.fn(X.op(x, y)), G.op(vx, v.fn(y))), (x, y))
    for c in report.checks:
        c.exhaustive = exhaustive
    return report
