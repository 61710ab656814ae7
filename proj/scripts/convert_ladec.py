#!/usr/bin/env python3
"""Convert the LADEC compound database to the evaluation layout.

LADEC ships as a wide CSV; only the compound surface form and its two
constituents matter here. Output rows are "word,part1,part2", which
`spacetok evaluate --format ladec` ingests directly. Rows with empty
fields or embedded commas are skipped and counted; rows whose parts do
not concatenate to the word are written anyway (ingestion counts and
drops non-concatenative parses, keeping that bookkeeping in one place).
"""

import argparse
import csv
import sys


def main():
    parser = argparse.ArgumentParser(
        description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("input", help="raw LADEC csv")
    parser.add_argument("output")
    parser.add_argument("--word-col", default="stim", help="compound column (default stim)")
    parser.add_argument("--c1-col", default="c1", help="first constituent column")
    parser.add_argument("--c2-col", default="c2", help="second constituent column")
    parser.add_argument("--keep-case", action="store_true")
    args = parser.parse_args()

    written = 0
    skipped = 0
    with open(args.input, newline="", encoding="utf-8-sig") as fin:
        reader = csv.DictReader(fin)
        for col in (args.word_col, args.c1_col, args.c2_col):
            if col not in (reader.fieldnames or []):
                sys.exit(f"column '{col}' not in {reader.fieldnames}")
        with open(args.output, "w", encoding="utf-8") as fout:
            for row in reader:
                fields = [
                    (row[c] or "").strip()
                    for c in (args.word_col, args.c1_col, args.c2_col)
                ]
                if not args.keep_case:
                    fields = [f.lower() for f in fields]
                if any(not f or "," in f for f in fields):
                    skipped += 1
                    continue
                fout.write(",".join(fields))
                fout.write("\n")
                written += 1
    print(f"wrote {written} rows, skipped {skipped}", file=sys.stderr)


if __name__ == "__main__":
    main()
