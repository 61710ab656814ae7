#!/usr/bin/env python3
"""Validate and filter MorphyNet derivational rows.

The English derivational file (eng.derivational.v1.tsv) already has the
six tab-separated columns the evaluator reads: base, derived, base POS,
derived POS, affix, and 'prefix'/'suffix'. This script keeps exactly
those columns, drops rows with missing fields or other affix kinds, and
lowercases the word material (POS tags pass through untouched).
"""

import argparse
import sys


def main():
    parser = argparse.ArgumentParser(
        description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("input", help="MorphyNet derivational tsv")
    parser.add_argument("output")
    parser.add_argument("--keep-case", action="store_true")
    args = parser.parse_args()

    written = 0
    skipped = 0
    with open(args.input, encoding="utf-8") as fin, open(
        args.output, "w", encoding="utf-8"
    ) as fout:
        for line in fin:
            cols = line.rstrip("\r\n").split("\t")
            if len(cols) < 6:
                skipped += 1
                continue
            base, derived, pos_b, pos_d, affix, kind = (c.strip() for c in cols[:6])
            if kind not in ("prefix", "suffix") or not (base and derived and affix):
                skipped += 1
                continue
            if not args.keep_case:
                base, derived, affix = base.lower(), derived.lower(), affix.lower()
            fout.write("\t".join((base, derived, pos_b, pos_d, affix, kind)))
            fout.write("\n")
            written += 1
    print(f"wrote {written} rows, skipped {skipped}", file=sys.stderr)


if __name__ == "__main__":
    main()
