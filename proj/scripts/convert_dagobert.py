#!/usr/bin/env python3
"""Convert a DagoBERT derivative segmentation file to the evaluation layout.

The released segmentations are tab-separated with the derivative in one
column and its morphemes in another (morpheme separator varies between
releases; hyphen and space both occur). Pick the columns and separator to
match your copy. Output rows are

    word<TAB>morph1 morph2 ...

which `spacetok evaluate --format dagobert` reads.
"""

import argparse
import sys


def main():
    parser = argparse.ArgumentParser(
        description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("input")
    parser.add_argument("output")
    parser.add_argument("--word-col", type=int, default=0, help="0-based column index")
    parser.add_argument("--morphs-col", type=int, default=1)
    parser.add_argument("--morph-sep", default=" ", help="separator inside the morphs column")
    parser.add_argument("--skip-header", action="store_true")
    parser.add_argument("--keep-case", action="store_true")
    args = parser.parse_args()

    written = 0
    skipped = 0
    with open(args.input, encoding="utf-8") as fin, open(
        args.output, "w", encoding="utf-8"
    ) as fout:
        for lineno, line in enumerate(fin):
            if lineno == 0 and args.skip_header:
                continue
            cols = line.rstrip("\r\n").split("\t")
            if len(cols) <= max(args.word_col, args.morphs_col):
                skipped += 1
                continue
            word = cols[args.word_col].strip()
            morphs = [
                m for m in cols[args.morphs_col].split(args.morph_sep) if m.strip()
            ]
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
