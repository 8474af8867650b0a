"""Command line interface: ``rank0quot {identify,solve,audit,count,batch} INPUT``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace

from .descent import SolveOptions, solve_curve
from .errors import ConsistencyError, CurveError, ParseError
from .models import PlaneQuartic, count_points_fp, good_reduction
from .pipeline import SCHEMA, dump_report, emit_summary, parse_record, run_batch
from .symmetry import build_quotient, detect_involutions, is_ciani


def _primes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of primes, got {text!r}") from None


def _read_lines(path: str) -> list[str]:
    if path == "-":
        return sys.stdin.read().splitlines()
    with open(path, encoding="utf-8") as fh:
        return fh.read().splitlines()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="JSON-lines file of curves ('-' for stdin)")
    common.add_argument("--height-bound", type=int, default=10_000, metavar="N",
                        help="height bound for point searches and rank falsification (default 10000)")
    common.add_argument("--search-oracle-bound", type=int, default=100, metavar="N",
                        help="height bound of the brute-force cross-check on C (default 100)")
    common.add_argument("--audit-primes", type=_primes, default=None, metavar="LIST",
                        help="comma-separated primes for bound audits (default: good primes in (6, 100])")
    common.add_argument("--assume-rank0", action="store_true",
                        help="skip the rank-0 falsification search and record the assumption")
    common.add_argument("--rank", type=int, default=None,
                        help="rank of Jac(C) to use in the Stoll audit")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="rank0quot", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("identify", parents=[common], help="list involutions and genus-1 quotients")
    sub.add_parser("solve", parents=[common], help="compute C(Q), one JSON report per curve")
    sub.add_parser("audit", parents=[common], help="Coleman and Stoll bounds for the solved curves")
    count = sub.add_parser("count", parents=[common], help="point counts over F_p")
    count.add_argument("--primes", type=_primes, default=(3, 5, 7, 11, 13, 17, 19, 23),
                       help="primes to count over (default 3..23)")
    batch = sub.add_parser("batch", parents=[common], help="solve a file and emit a summary")
    batch.add_argument("--jobs", type=int, default=1, metavar="N")
    batch.add_argument("--format", choices=("json", "csv"), default="json")
    batch.add_argument("--out", default=None, help="write reports here instead of stdout")
    batch.add_argument("--summary", default=None, help="write the summary here instead of stderr")
    return parser


def _options(args) -> SolveOptions:
    return SolveOptions(height_bound=args.height_bound, search_oracle_bound=args.search_oracle_bound,
                        assume_rank0=args.assume_rank0, assumed_rank=args.rank,
                        audit_primes=args.audit_primes)


def _records(lines):
    """Yield (record, curve, error report) triples for the non-blank lines."""
    for n, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rec = parse_record(line, n)
            yield rec, rec.curve(), None
        except ParseError as exc:
            yield None, None, {"schema": SCHEMA, "line": n, "error": exc.reason}
        except CurveError as exc:
            yield None, None, {"schema": SCHEMA, "line": n, "error": f"{type(exc).__name__}: {exc}"}


def _identify(rec, C) -> dict:
    invs = detect_involutions(C, rec.transforms)
    quotients = []
    for inv in invs:
        entry = {"involution": inv.kind}
        try:
            entry["D"] = build_quotient(C, inv).D.to_json()
        except CurveError as exc:
            entry["error"] = str(exc)
        quotients.append(entry)
    out = {"schema": SCHEMA, "id": rec.id, "involutions": [i.to_json() for i in invs], "quotients": quotients}
    if isinstance(C, PlaneQuartic):
        ciani, params = is_ciani(C)
        out["ciani"] = {"is_ciani": ciani, "params": None if params is None else [str(c) for c in params]}
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    lines = _read_lines(args.input)
    options = _options(args)
    if args.command == "batch":
        reports, summary = run_batch(lines, options, args.jobs)
        text = "".join(dump_report(r) + "\n" for r in reports)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        summary_text = emit_summary(summary, args.format, args.summary)
        if not args.summary:
            sys.stderr.write(summary_text)
        return summary.exit_code
    if args.command == "solve":
        reports, summary = run_batch(lines, options, 1)
        for r in reports:
            print(dump_report(r))
        return summary.exit_code

    status = 0
    for rec, C, err in _records(lines):
        if err is not None:
            print(json.dumps(err))
            status = max(status, 2)
            continue
        if args.command == "identify":
            print(json.dumps(_identify(rec, C)))
        elif args.command == "count":
            counts = {str(p): (count_points_fp(C, p) if good_reduction(C, p) else None) for p in args.primes}
            print(json.dumps({"schema": SCHEMA, "id": rec.id, "counts": counts}))
        elif args.command == "audit":
            opts = replace(options, extra_transforms=rec.transforms)
            if rec.assumed_rank is not None:
                opts = replace(opts, assumed_rank=rec.assumed_rank)
            try:
                result = solve_curve(C, opts)
            except CurveError as exc:
                print(json.dumps({"schema": SCHEMA, "id": rec.id, "error": f"{type(exc).__name__}: {exc}"}))
                status = 3 if isinstance(exc, ConsistencyError) else max(status, 2)
                continue
            out = {"schema": SCHEMA, "id": rec.id, "status": result.status.kind,
                   "n_points": len(result.status.points),
                   "rank": {"r": result.rank, "conditional": result.rank_conditional},
                   "audits": [a.to_json() for a in result.audits]}
            print(json.dumps(out))
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
