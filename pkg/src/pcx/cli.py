"""``pcx`` command line: validate, analyze, axioms, transport.

Exit codes: 0 ok, 1 domain violation (invalid matrix, structure mismatch),
2 input/parse or usage error, 3 a law check failed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import TextIO

from pcx.algebra import StructureMismatch
from pcx.formats import MatrixFormatError, format_matrix, group_name, read_matrix
from pcx.indicators import IndicatorMap, pairwise_symmetrization, product_indicator
from pcx.instances import (
    KI,
    POSITIVE_REALS,
    REALS,
    build_catalog,
    exp_isomorphism,
    negative_controls,
    s_a_indicator,
    three_level_indicator,
)
from pcx.laws import DEFAULT_SAMPLES, DEFAULT_SEED
from pcx.pcmatrix import (
    InvalidPCMatrix,
    PCMatrix,
    inconsistency_indicator,
    repair_reciprocal_upper,
    validate_pc,
)

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE, EXIT_LAW = 0, 1, 2, 3


class SelectorError(ValueError):
    pass


def _param(text: str) -> float | int:
    text = text.strip()
    if text == "e":
        return math.e
    try:
        x = float(text)
    except ValueError:
        raise SelectorError(f"not a number: {text!r}") from None
    if not math.isfinite(x):
        raise SelectorError(f"not finite: {text!r}")
    return int(x) if x.is_integer() else x


def parse_selector(sel: str) -> IndicatorMap:
    """Turn ``ki | sa:<a> | three-level:<a,b,c> | product:<s,s> | symmetrized:<s>`` into a map."""
    sel = sel.strip()
    head, _, rest = sel.partition(":")
    try:
        if head == "ki" and not rest:
            return KI
        if head == "sa" and rest:
            return s_a_indicator(float(_param(rest)))
        if head == "three-level":
            if not rest:
                return three_level_indicator()
            params = [_param(p) for p in rest.split(",")]
            if len(params) != 3:
                raise SelectorError("three-level takes exactly three levels a,b,c")
            return three_level_indicator(*params)
        if head == "symmetrized" and rest:
            return pairwise_symmetrization(parse_selector(rest))
        if head == "product" and rest:
            # nested selectors may contain commas; take the first split that parses on both sides
            parts = rest.split(",")
            for cut in range(1, len(parts)):
                try:
                    left = parse_selector(",".join(parts[:cut]))
                    right = parse_selector(",".join(parts[cut:]))
                except SelectorError:
                    continue
                return product_indicator(left, right)
            raise SelectorError(f"cannot split {rest!r} into two selectors")
    except SelectorError:
        raise
    except ValueError as exc:
        raise SelectorError(f"{sel}: {exc}") from None
    raise SelectorError(f"unknown indicator selector {sel!r}")


@dataclass
class AnalysisConfig:
    indicator: str = "ki"
    path: str | None = None
    output_format: str = "json"
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    repair: bool = False
    group: str | None = None
    top: int | None = None

    def __post_init__(self):
        if self.samples < 1:
            raise SelectorError("samples must be >= 1")
        parse_selector(self.indicator)


def default_seed() -> int:
    env = os.environ.get("PCX_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise SelectorError(f"PCX_SEED must be an integer, got {env!r}") from None


def _load(path: str, group: str | None, repair: bool) -> PCMatrix:
    A = read_matrix(path, group)
    return repair_reciprocal_upper(A) if repair else A


def _label(A: PCMatrix, i: int) -> str:
    return A.labels[i] if A.labels else str(i)


# -- commands -----------------------------------------------------------------------------

def cmd_validate(path: str, group: str | None = None, repair: bool = False,
                 output_format: str = "text", out: TextIO = sys.stdout) -> int:
    A = _load(path, group, repair)
    violations = validate_pc(A)
    if output_format == "json":
        doc = {"valid": not violations, "n": A.n, "group": group_name(A.group),
               "violations": [{"i": v.i, "j": v.j, "kind": v.kind,
                               "found": v.found, "expected": v.expected} for v in violations]}
        out.write(json.dumps(doc) + "\n")
    elif not violations:
        out.write(f"valid PC matrix over {A.group.name} (n={A.n})\n")
    else:
        out.write(f"invalid PC matrix over {A.group.name} (n={A.n}): {len(violations)} violation(s)\n")
        for v in violations:
            out.write(f"  ({v.i},{v.j}) {v.kind}: found {v.found!r}, expected {v.expected!r}\n")
    return EXIT_DOMAIN if violations else EXIT_OK


def analyze(config: AnalysisConfig) -> dict:
    """Run the triad scan described by ``config`` and return the JSON-ready report."""
    T = parse_selector(config.indicator)
    A = _load(config.path, config.group, config.repair)
    if T.domain is not A.group:
        raise StructureMismatch(
            f"indicator {config.indicator!r} works on {T.domain.name} but the matrix is over "
            f"{A.group.name}" + ("; pass --group additive for additive CSV input"
                                 if T.domain is REALS and A.group is POSITIVE_REALS else ""))
    report = inconsistency_indicator(T, A, top=config.top)
    doc = report.to_dict()
    doc["indicator"] = config.indicator
    doc["seed"] = config.seed
    if A.labels:
        doc["labels"] = list(A.labels)
    return doc


def cmd_analyze(config: AnalysisConfig, out: TextIO = sys.stdout) -> int:
    doc = analyze(config)
    if config.output_format == "json":
        out.write(json.dumps(doc) + "\n")
        return EXIT_OK
    labels = doc.get("labels")
    name = (lambda i: labels[i]) if labels else str
    out.write(f"indicator {doc['indicator']} on {doc['n']}x{doc['n']} matrix\n")
    out.write(f"value: {doc['indicator_value']!r}  consistent: {'yes' if doc['consistent'] else 'no'}\n")
    if doc["worst"]:
        out.write("worst triads (i, j, k) -> T(a_ik, a_ij, a_kj):\n")
        for t in doc["worst"]:
            out.write(f"  ({name(t['i'])}, {name(t['j'])}, {name(t['k'])}): {t['value']!r}\n")
    return EXIT_OK


def cmd_axioms(samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
               negative_control: bool = False, output_format: str = "text",
               out: TextIO = sys.stdout) -> int:
    reports = build_catalog(check=False).check_all(n_samples=samples, seed=seed)
    if negative_control:
        reports += negative_controls().check_all(n_samples=samples, seed=seed)
    ok = all(r.passed for r in reports)
    if output_format == "json":
        out.write(json.dumps({"passed": ok, "seed": seed, "samples": samples,
                              "reports": [r.to_dict() for r in reports]}) + "\n")
    else:
        for r in reports:
            out.write(r.summary() + "\n")
        failed = sum(not r.passed for r in reports)
        out.write(f"{len(reports) - failed}/{len(reports)} suites passed (seed {seed}, {samples} samples)\n")
    return EXIT_OK if ok else EXIT_LAW


def cmd_transport(path: str, base: float, direction: str | None = None,
                  group: str | None = None, output: str | None = None,
                  out: TextIO = sys.stdout) -> int:
    phi = exp_isomorphism(base)
    A = read_matrix(path, group)
    if direction is None:
        direction = "to-additive" if A.group is POSITIVE_REALS else "to-multiplicative"
    if direction == "to-additive":
        if A.group is not POSITIVE_REALS:
            raise StructureMismatch("to-additive needs a multiplicative matrix")
        f, target = phi.backward, REALS
    else:
        if A.group is not REALS:
            raise StructureMismatch("to-multiplicative needs an additive matrix (use --group additive)")
        f, target = phi.forward, POSITIVE_REALS
    B = PCMatrix(target, [[f(x) for x in row] for row in A.entries], A.labels)
    fmt = "csv" if output and output.endswith(".csv") else "json"
    text = format_matrix(B, fmt)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


# -- entry point ------------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pcx", description="Inconsistency analysis of pairwise comparisons matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check diagonal and reciprocity")
    v.add_argument("file")
    v.add_argument("--group", choices=["multiplicative", "additive"])
    v.add_argument("--repair", choices=["reciprocal-upper"])
    v.add_argument("--format", choices=["text", "json"], default="text")

    a = sub.add_parser("analyze", help="indicator value and worst triads")
    a.add_argument("file")
    a.add_argument("--indicator", default="ki")
    a.add_argument("--top", type=int)
    a.add_argument("--format", choices=["json", "text"], default="json")
    a.add_argument("--group", choices=["multiplicative", "additive"])
    a.add_argument("--repair", choices=["reciprocal-upper"])
    a.add_argument("--seed", type=int)

    x = sub.add_parser("axioms", help="run the seeded law-check suite")
    x.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    x.add_argument("--seed", type=int)
    x.add_argument("--format", choices=["text", "json"], default="text")
    x.add_argument("--negative-control", action="store_true",
                   help="also run deliberately broken fixtures (exits 3)")

    t = sub.add_parser("transport", help="entrywise log_a / a**x between multiplicative and additive")
    t.add_argument("file")
    t.add_argument("--base", required=True, type=float)
    t.add_argument("--direction", choices=["to-additive", "to-multiplicative"])
    t.add_argument("--group", choices=["multiplicative", "additive"])
    t.add_argument("--output", "-o")
    return p


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    args = _parser().parse_args(argv)
    try:
        seed = args.seed if getattr(args, "seed", None) is not None else default_seed()
        if args.command == "validate":
            return cmd_validate(args.file, args.group, args.repair is not None, args.format, out)
        if args.command == "analyze":
            config = AnalysisConfig(args.indicator, args.file, args.format, seed,
                                    repair=args.repair is not None, group=args.group, top=args.top)
            return cmd_analyze(config, out)
        if args.command == "axioms":
            if args.samples < 1:
                raise SelectorError("--samples must be >= 1")
            return cmd_axioms(args.samples, seed, args.negative_control, args.format, out)
        return cmd_transport(args.file, args.base, args.direction, args.group, args.output, out)
    except (MatrixFormatError, SelectorError) as exc:
        print(f"pcx: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidPCMatrix, StructureMismatch, OverflowError) as exc:
        print(f"pcx: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"pcx: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
