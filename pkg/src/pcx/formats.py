"""Matrix files: CSV (n lines of n decimal fields) and a small JSON document.

JSON shape::

    {"group": "multiplicative" | "additive" | "product",
     "factors": ["multiplicative", "additive"],      # product only
     "n": 3, "entries": [...row-major...], "labels": ["a", "b", "c"]}

Product entries are two-element lists.  Ingestion rejects anything that is not
an element of the declared group (non-finite numbers, nonpositive ratios).
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

from pcx.algebra import Group, product_group
from pcx.instances import POSITIVE_REALS, REALS
from pcx.pcmatrix import PCMatrix

GROUPS = {"multiplicative": POSITIVE_REALS, "additive": REALS}


class MatrixFormatError(ValueError):
    """The file could not be read as a matrix over the requested group."""


def group_name(X: Group) -> str:
    for name, G in GROUPS.items():
        if G is X:
            return name
    return "product"


def resolve_group(name: str, factors: list[str] | None = None) -> Group:
    if name in GROUPS:
        return GROUPS[name]
    if name == "product":
        if not factors or len(factors) != 2 or any(f not in GROUPS for f in factors):
            raise MatrixFormatError("product group needs two factors from "
                                    f"{sorted(GROUPS)}, got {factors!r}")
        return product_group(GROUPS[factors[0]], GROUPS[factors[1]])
    raise MatrixFormatError(f"unknown group {name!r}")


def _number(text, where: str) -> float:
    if isinstance(text, bool):
        raise MatrixFormatError(f"{where}: booleans are not numbers")
    try:
        x = float(text)
    except (TypeError, ValueError):
        raise MatrixFormatError(f"{where}: not a number: {text!r}") from None
    if not math.isfinite(x):
        raise MatrixFormatError(f"{where}: not finite: {text!r}")
    return x


def _element(X: Group, raw, where: str):
    if X is POSITIVE_REALS or X is REALS:
        x = _number(raw, where)
    elif isinstance(raw, (list, tuple)) and len(raw) == 2:
        x = (_number(raw[0], where), _number(raw[1], where))
    else:
        raise MatrixFormatError(f"{where}: expected a pair, got {raw!r}")
    if not X.owns(x):
        raise MatrixFormatError(f"{where}: {raw!r} is not an element of {X.name}")
    return x


def parse_csv(text: str, group: str = "multiplicative") -> PCMatrix:
    X = resolve_group(group)
    if X not in (POSITIVE_REALS, REALS):
        raise MatrixFormatError("CSV only carries multiplicative or additive matrices")
    rows = [r for r in csv.reader(io.StringIO(text)) if any(f.strip() for f in r)]
    if not rows:
        raise MatrixFormatError("empty CSV")
    n = len(rows)
    out = []
    for i, r in enumerate(rows):
        if len(r) != n:
            raise MatrixFormatError(f"line {i + 1}: {len(r)} fields, expected {n}")
        out.append([_element(X, f.strip(), f"line {i + 1} field {j + 1}") for j, f in enumerate(r)])
    return PCMatrix(X, out)


def parse_json(text: str, group: str | None = None) -> PCMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MatrixFormatError("JSON matrix must be an object")
    X = resolve_group(doc.get("group", group or "multiplicative"), doc.get("factors"))
    entries = doc.get("entries")
    if not isinstance(entries, list) or not entries:
        raise MatrixFormatError("'entries' must be a non-empty flat list")
    n = doc.get("n", math.isqrt(len(entries)))
    if not isinstance(n, int) or isinstance(n, bool) or n < 1 or n * n != len(entries):
        raise MatrixFormatError(f"'n' = {n!r} does not match {len(entries)} entries")
    values = [_element(X, e, f"entry {idx}") for idx, e in enumerate(entries)]
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise MatrixFormatError(f"'labels' must list {n} names")
    return PCMatrix(X, [values[i * n:(i + 1) * n] for i in range(n)], labels)


def read_matrix(path: str | Path, group: str | None = None) -> PCMatrix:
    """Read a matrix file; JSON is recognised by suffix or a leading ``{``."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc.strerror}") from None
    if str(path).endswith(".json") or text.lstrip().startswith("{"):
        return parse_json(text, group)
    return parse_csv(text, group or "multiplicative")


def matrix_to_dict(A: PCMatrix) -> dict:
    doc = {"group": group_name(A.group)}
    if doc["group"] == "product":
        doc["factors"] = [group_name(f) for f in _factors(A.group)]
    doc["n"] = A.n
    doc["entries"] = [list(x) if isinstance(x, tuple) else x for row in A.entries for x in row]
    if A.labels is not None:
        doc["labels"] = list(A.labels)
    return doc


def _factors(X: Group) -> tuple[Group, Group]:
    for a in GROUPS.values():
        for b in GROUPS.values():
            if product_group(a, b) is X:
                return a, b
    raise MatrixFormatError(f"cannot serialise matrices over {X.name}")


def format_matrix(A: PCMatrix, fmt: str = "json") -> str:
    if fmt == "csv":
        if A.group not in (POSITIVE_REALS, REALS):
            raise MatrixFormatError("CSV only carries multiplicative or additive matrices")
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows([[repr(float(x)) for x in r] for r in A.entries])
        return buf.getvalue()
    return json.dumps(matrix_to_dict(A), indent=2) + "\n"
