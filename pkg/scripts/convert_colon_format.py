#!/usr/bin/env python3
"""Convert colon-separated coefficient lists to the JSON-lines input format.

Each input line is ``[id=NAME:]quartic:c1:...:c15`` or ``[id=NAME:]hyperelliptic:f0:...:f8``.
Quartic coefficients follow the package's monomial order (X^4, X^3Y, ..., Z^4); the
hyperelliptic list is f(x, 1) with the constant term first.  Lines without an id get
``<stem>-<line number>``.  Blank lines and lines starting with ``#`` are skipped.

    python3 scripts/convert_colon_format.py curves.txt > curves.jsonl
"""
import argparse
import sys
from pathlib import Path

from rank0quot.errors import ParseError
from rank0quot.pipeline import convert_colon_line


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("input", type=Path)
    args = ap.parse_args(argv)
    status = 0
    for n, line in enumerate(args.input.read_text().splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            print(convert_colon_line(line, ident=f"{args.input.stem}-{n}"))
        except ParseError as exc:
            print(f"{args.input}:{n}: {exc.reason}", file=sys.stderr)
            status = 2
    return status


if __name__ == "__main__":
    sys.exit(main())
