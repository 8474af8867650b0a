#!/usr/bin/env python3
"""Solve the bundled example curves and print a one-line digest per curve.

    python3 scripts/run_examples.py [--fixture PATH] [--json]
"""
import argparse
import json
import sys
import time
from pathlib import Path

from rank0quot.descent import SolveOptions
from rank0quot.pipeline import process_line

DEFAULT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "examples.jsonl"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fixture", type=Path, default=DEFAULT)
    ap.add_argument("--json", action="store_true", help="print the full reports")
    args = ap.parse_args(argv)
    for n, line in enumerate(args.fixture.read_text().splitlines(), start=1):
        if not line.strip():
            continue
        t0 = time.perf_counter()
        rep = process_line((n, line, SolveOptions()))
        dt = time.perf_counter() - t0
        if args.json:
            print(json.dumps(rep))
            continue
        st = rep["status"]
        pts = " ".join("(" + " : ".join(p) + ")" for p in st.get("points", []))
        print(f"{rep['id']:<22} {st['kind']:<22} {dt:5.2f}s  {pts or st.get('witness') or st.get('reason', '')}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
