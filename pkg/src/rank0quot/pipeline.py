"""JSON-lines ingestion, batch execution and summary emission."""
from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

from .arith import BinaryForm
from .descent import SolveOptions, solve_curve
from .errors import ConsistencyError, CurveError, ParseError
from .models import validate_hyperelliptic, validate_quartic

log = logging.getLogger(__name__)

SCHEMA = "qd-1"
KNOWN_FIELDS = {"id", "type", "coeffs", "f", "assumed_rank", "transforms"}

CATEGORIES = (
    "rank-0-with-elliptic-quotient",
    "rank-0-with-pointless-quotient",
    "rank-positive-quotient",
    "undetermined",
    "not-eligible",
    "error",
)
_CATEGORY_OF = {
    "Solved": "rank-0-with-elliptic-quotient",
    "EmptyCertified": "rank-0-with-pointless-quotient",
    "RankPositiveQuotient": "rank-positive-quotient",
    "Undetermined": "undetermined",
    "NotEligible": "not-eligible",
}


@dataclass(frozen=True)
class CurveRecord:
    id: str
    type: str
    payload: tuple[Fraction, ...]
    assumed_rank: int | None = None
    transforms: tuple = ()
    line_number: int = 0

    def curve(self):
        """The validated curve; CurveError subclasses signal an invalid payload."""
        if self.type == "quartic":
            return validate_quartic(list(self.payload))
        cs = list(self.payload) + [Fraction(0)] * (9 - len(self.payload))
        return validate_hyperelliptic(BinaryForm(8, cs))


def _number(value, line_number: int, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{where}: booleans are not coefficients", line_number)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value.is_integer():
            return Fraction(int(value))
        raise ParseError(f"{where}: non-integral float {value!r}; write rationals as strings like \"3/4\"",
                         line_number)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{where}: cannot read {value!r} as a rational number", line_number) from None
    raise ParseError(f"{where}: unexpected {type(value).__name__}", line_number)


def parse_record(line: str, line_number: int = 1) -> CurveRecord:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line_number) from None
    if not isinstance(obj, dict):
        raise ParseError("each line must hold a JSON object", line_number)
    unknown = sorted(set(obj) - KNOWN_FIELDS)
    if unknown:
        log.warning("line %d: ignoring unknown fields %s", line_number, ", ".join(unknown))
    kind = obj.get("type")
    if kind not in ("quartic", "hyperelliptic"):
        raise ParseError(f"type must be \"quartic\" or \"hyperelliptic\", got {kind!r}", line_number)
    key = "coeffs" if kind == "quartic" else "f"
    raw = obj.get(key)
    if not isinstance(raw, list):
        raise ParseError(f"missing coefficient list \"{key}\"", line_number)
    if kind == "quartic" and len(raw) != 15:
        raise ParseError(f"a quartic needs 15 coefficients, got {len(raw)}", line_number)
    if kind == "hyperelliptic" and not 1 <= len(raw) <= 9:
        raise ParseError(f"f needs at most 9 coefficients (degree <= 8), got {len(raw)}", line_number)
    payload = tuple(_number(v, line_number, f"{key}[{i}]") for i, v in enumerate(raw))
    rank = obj.get("assumed_rank")
    if rank is not None and (not isinstance(rank, int) or isinstance(rank, bool) or rank < 0):
        raise ParseError("assumed_rank must be a nonnegative integer", line_number)
    transforms = obj.get("transforms", [])
    if not isinstance(transforms, list):
        raise ParseError("transforms must be a list of 3x3 matrices", line_number)
    mats = []
    for t, T in enumerate(transforms):
        if not (isinstance(T, list) and len(T) == 3 and all(isinstance(r, list) and len(r) == 3 for r in T)):
            raise ParseError(f"transforms[{t}] is not a 3x3 matrix", line_number)
        mats.append(tuple(tuple(_number(v, line_number, f"transforms[{t}]") for v in row) for row in T))
    ident = obj.get("id", f"line{line_number}")
    return CurveRecord(str(ident), kind, payload, rank, tuple(mats), line_number)


# -- per-record processing -------------------------------------------------------

def _error_report(ident, line_number, kind, reason) -> dict:
    return {"schema": SCHEMA, "id": ident, "line": line_number, "category": "error",
            "status": {"kind": kind, "reason": reason}}


def _guess_id(line: str):
    try:
        obj = json.loads(line)
    except json.JSONDecodeError:
        return None
    return str(obj["id"]) if isinstance(obj, dict) and "id" in obj else None


def process_line(args) -> dict:
    """Parse, validate and solve one input line; errors become part of the report."""
    line_number, line, options = args
    try:
        rec = parse_record(line, line_number)
    except ParseError as exc:
        return _error_report(_guess_id(line), line_number, "ParseError", exc.reason)
    try:
        C = rec.curve()
    except CurveError as exc:
        return _error_report(rec.id, line_number, "ParseError", f"{type(exc).__name__}: {exc}")
    opts = replace(options, extra_transforms=rec.transforms,
                   assumed_rank=rec.assumed_rank if rec.assumed_rank is not None else options.assumed_rank)
    try:
        result = solve_curve(C, opts)
    except ConsistencyError as exc:
        return _error_report(rec.id, line_number, "ConsistencyError", f"{type(exc).__name__}: {exc}")
    except CurveError as exc:
        return _error_report(rec.id, line_number, "Error", f"{type(exc).__name__}: {exc}")
    report = {"schema": SCHEMA, "id": rec.id, "line": line_number,
              "category": _CATEGORY_OF[result.status.kind]}
    report.update(result.to_json())
    return report


@dataclass
class BatchSummary:
    tallies: dict[str, int] = field(default_factory=lambda: {c: 0 for c in CATEGORIES})
    histogram: dict[int, int] = field(default_factory=dict)
    parse_failures: int = 0
    consistency_failures: int = 0

    @property
    def records(self) -> int:
        return sum(self.tallies.values())

    @property
    def eligible(self) -> int:
        """Curves with at least one genus-1 quotient (derived; not a partition category)."""
        return self.records - self.tallies["not-eligible"] - self.tallies["error"]

    def add(self, report: dict) -> None:
        self.tallies[report["category"]] += 1
        kind = report["status"]["kind"]
        if kind == "Solved":
            n = report["status"]["count"]
            self.histogram[n] = self.histogram.get(n, 0) + 1
        elif kind == "ParseError":
            self.parse_failures += 1
        elif kind == "ConsistencyError":
            self.consistency_failures += 1

    @property
    def exit_code(self) -> int:
        if self.consistency_failures:
            return 3
        if self.parse_failures:
            return 2
        return 0

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "records": self.records,
            "tallies": {c: self.tallies[c] for c in CATEGORIES},
            "eligible": self.eligible,
            "histogram": {str(k): self.histogram[k] for k in sorted(self.histogram)},
        }


def run_batch(lines: Iterable[str], options: SolveOptions = SolveOptions(), jobs: int = 1
              ) -> tuple[list[dict], BatchSummary]:
    """Solve every non-blank line; reports come back in input order for any ``jobs``."""
    tasks = [(i, line, options) for i, line in enumerate(lines, start=1) if line.strip()]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(process_line, tasks))
    else:
        reports = [process_line(t) for t in tasks]
    summary = BatchSummary()
    for r in reports:
        summary.add(r)
    return reports, summary


def dump_report(report: dict) -> str:
    return json.dumps(report, separators=(",", ":"))


def emit_summary(summary: BatchSummary, fmt: str = "json", path=None) -> str:
    if fmt == "json":
        text = json.dumps(summary.to_json(), indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["category", "count"])
        for c in CATEGORIES:
            w.writerow([c, summary.tallies[c]])
        for k in sorted(summary.histogram):
            w.writerow([f"histogram:{k}", summary.histogram[k]])
        text = buf.getvalue()
    else:
        raise ValueError(f"unknown summary format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


# -- colon-separated input -------------------------------------------------------------

def convert_colon_line(line: str, ident: str | None = None) -> str:
    """``quartic:c1:...:c15`` or ``hyperelliptic:f0:...:f8`` (an optional ``id=`` field first) to JSONL.

    Coefficients keep their textual form, so ``3/4`` stays exact.
    """
    fields = [f.strip() for f in line.strip().split(":")]
    if fields and fields[0].startswith("id="):
        ident = fields.pop(0)[3:]
    if not fields or fields[0] not in ("quartic", "hyperelliptic"):
        raise ParseError(f"unknown curve type {fields[0] if fields else ''!r}", 0)
    kind, coeffs = fields[0], fields[1:]
    obj = {"id": ident} if ident is not None else {}
    obj["type"] = kind
    obj["coeffs" if kind == "quartic" else "f"] = [int(c) if c.lstrip("-").isdigit() else c for c in coeffs]
    return json.dumps(obj)
