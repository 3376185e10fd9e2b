"""Law-checking reports and the tuple enumeration shared by every axiom check.

Checks are exhaustive over small finite carriers and seeded-random otherwise.
A failed law is data: it is recorded with concrete witness tuples, never raised.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator

DEFAULT_SEED = 42
DEFAULT_SAMPLES = 1000
MAX_EXHAUSTIVE_ORDER = 24
# keeps 5-ary laws on order-24 carriers from exploding (24**5 ~ 8e6 evaluations)
MAX_EXHAUSTIVE_TUPLES = 400_000
MAX_WITNESSES = 5

Sampler = Callable[[random.Random], Any]


@dataclass
class LawCheck:
    law: str
    samples: int = 0
    failures: list[tuple] = field(default_factory=list)
    failure_count: int = 0
    exhaustive: bool = False
    skipped: str | None = None

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def record(self, ok: bool, witness: tuple) -> None:
        self.samples += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_WITNESSES:
                self.failures.append(witness)

    @property
    def witness(self) -> tuple | None:
        return self.failures[0] if self.failures else None

    def line(self) -> str:
        mode = "exhaustive" if self.exhaustive else "sampled"
        if self.skipped:
            return f"  [SKIP] {self.law}: {self.skipped}"
        if self.passed:
            return f"  [PASS] {self.law} ({self.samples} {mode})"
        return (f"  [FAIL] {self.law} ({self.failure_count}/{self.samples} {mode}); "
                f"witness {self.failures[0]!r}")


@dataclass
class LawReport:
    """Outcome of one axiom suite run against one subject."""

    subject: str
    checks: list[LawCheck] = field(default_factory=list)

    def law(self, name: str) -> LawCheck:
        for check in self.checks:
            if check.law == name:
                return check
        check = LawCheck(name)
        self.checks.append(check)
        return check

    def __getitem__(self, name: str) -> LawCheck:
        for check in self.checks:
            if check.law == name:
                return check
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.law == name for c in self.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed_laws(self) -> list[str]:
        return [c.law for c in self.checks if not c.passed]

    def merge(self, other: LawReport, prefix: str = "") -> LawReport:
        for check in other.checks:
            check.law = prefix + check.law
            self.checks.append(check)
        return self

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return "\n".join([f"[{status}] {self.subject}"] + [c.line() for c in self.checks])

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "laws": [
                {
                    "law": c.law,
                    "passed": c.passed,
                    "samples": c.samples,
                    "exhaustive": c.exhaustive,
                    "failure_count": c.failure_count,
                    "witnesses": [[repr(x) for x in w] for w in c.failures],
                    **({"skipped": c.skipped} if c.skipped else {}),
                }
                for c in self.checks
            ],
        }


class AxiomViolation(ValueError):
    """Raised by checked constructors when sampling finds a broken law."""

    def __init__(self, report: LawReport):
        self.report = report
        super().__init__(f"{report.subject}: laws violated: {', '.join(report.failed_laws)}\n"
                         + report.summary())


def tuples(
    arity: int,
    sampler: Sampler | None,
    n_samples: int,
    rng: random.Random,
    elements: tuple | None = None,
) -> tuple[Iterable[tuple], bool]:
    """Return (tuples to test, exhaustive?) for a law quantified over ``arity`` variables.

    Finite carriers of order <= MAX_EXHAUSTIVE_ORDER are enumerated completely
    when the product stays under MAX_EXHAUSTIVE_TUPLES; everything else is sampled.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    if (elements is not None and len(elements) <= MAX_EXHAUSTIVE_ORDER
            and len(elements) ** arity <= MAX_EXHAUSTIVE_TUPLES):
        return itertools.product(elements, repeat=arity), True
    if sampler is None:
        if elements is None:
            raise ValueError("no sampler available for an infinite carrier")
        sampler = _choice_sampler(elements)
    return _sampled(arity, sampler, n_samples, rng), False


def _sampled(arity: int, sampler: Sampler, n: int, rng: random.Random) -> Iterator[tuple]:
    for _ in range(n):
        yield tuple(sampler(rng) for _ in range(arity))


def _choice_sampler(elements: tuple) -> Sampler:
    return lambda rng: rng.choice(elements)
