#!/usr/bin/env python3
"""Convert a MorphoLex-en export to the evaluation layout.

Export the spreadsheet sheet you want as CSV or TSV first. Segmentations
use MorphoLex's marker notation, e.g. "{(un)<(beat)>able>}": units are
runs of letters, a '<' after a unit marks it as a prefix, a '>' before a
unit marks it as a suffix, everything else is a root. Output rows are

    word<TAB>un< beat >able

(trailing '<' = prefix, leading '>' = suffix, bare = root), the form
`spacetok evaluate --format morpholex` reads. Non-concatenative
segmentations (MorphoLex has many: "happiness" = happy + ness) are
written anyway; ingestion counts and drops them.
"""

import argparse
import csv
import re
import sys

UNIT = re.compile(r"[A-Za-z']+")


def to_markers(segm):
    morphs = []
    for m in UNIT.finditer(segm):
        # Look past closing parentheses for a prefix marker, and past an
        # opening parenthesis for a suffix marker.
        i = m.end()
        while i < len(segm) and segm[i] == ")":
            i += 1
        j = m.start() - 1
        while j >= 0 and segm[j] == "(":
            j -= 1
        if i < len(segm) and segm[i] == "<":
            morphs.append(m.group() + "<")
        elif j >= 0 and segm[j] == ">":
            morphs.append(">" + m.group())
        else:
            morphs.append(m.group())
    return morphs


def main():
    parser = argparse.ArgumentParser(
        description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("input", help="csv/tsv export of a MorphoLex sheet")
    parser.add_argument("output")
    parser.add_argument("--word-col", default="Word")
    parser.add_argument("--segm-col", default="MorphoLexSegm")
    parser.add_argument("--delimiter", default=None, help="default: sniff , vs tab")
    parser.add_argument("--keep-case", action="store_true")
    args = parser.parse_args()

    with open(args.input, newline="", encoding="utf-8-sig") as fin:
        sample = fin.read(4096)
        fin.seek(0)
        delim = args.delimiter or ("\t" if sample.count("\t") > sample.count(",") else ",")
        reader = csv.DictReader(fin, delimiter=delim)
        for col in (args.word_col, args.segm_col):
            if col not in (reader.fieldnames or []):
                sys.exit(f"column '{col}' not in {reader.fieldnames}")

        written = 0
        skipped = 0
        with open(args.output, "w", encoding="utf-8") as fout:
            for row in reader:
                word = (row[args.word_col] or "").strip()
                segm = (row[args.segm_col] or "").strip()
                morphs = to_markers(segm)
                if not word or not morphs or "\t" in word:
                    skipped += 1
                    continue
                if not args.keep_case:
                    word = word.lower()
                    morphs = [m.lower() for m in morphs]
                fout.write(f"{word}\t{' '.join(morphs)}\n")
                written += 1
    print(f"wrote {written} rows, skipped {skipped}", file=sys.stderr)


if __name__ == "__main__":
    main()
