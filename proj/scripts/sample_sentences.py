#!/usr/bin/env python3
"""Sample sentences from a wikiextractor output tree.

Walks every extracted file (wikiextractor --json layout: one JSON object
per line with a "text" field), splits article text into sentences with a
simple punctuation rule, filters out fragments, and reservoir-samples a
fixed number of sentences. The sample is deterministic for a given tree
and seed.
"""

import argparse
import json
import random
import re
import sys
from pathlib import Path

SENT_END = re.compile(r"(?<=[.!?])\s+(?=[A-Z\"'(])")


def sentences(text):
    for para in text.split("\n"):
        para = para.strip()
        if not para:
            continue
        for sent in SENT_END.split(para):
            sent = " ".join(sent.split())
            # Keep prose: a few words and at least one letter.
            if len(sent.split()) < 3 or not any(c.isalpha() for c in sent):
                continue
            yield sent


def main():
    parser = argparse.ArgumentParser(
        description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("extracted", help="wikiextractor output directory")
    parser.add_argument("output", help="sentence file to write")
    parser.add_argument("--count", type=int, default=1000000)
    parser.add_argument("--seed", type=int, default=13)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    reservoir = []
    seen = 0
    files = sorted(p for p in Path(args.extracted).rglob("wiki_*") if p.is_file())
    if not files:
        sys.exit(f"no wiki_* files under {args.extracted}")

    for path in files:
        with open(path, encoding="utf-8") as f:
            for line in f:
                try:
                    text = json.loads(line).get("text", "")
                except json.JSONDecodeError:
                    continue
                for sent in sentences(text):
                    if len(reservoir) < args.count:
                        reservoir.append(sent)
                    else:
                        j = rng.randrange(seen + 1)
                        if j < args.count:
                            reservoir[j] = sent
                    seen += 1

    if len(reservoir) < args.count:
        print(
            f"warning: only {len(reservoir)} sentences available", file=sys.stderr
        )
    with open(args.output, "w", encoding="utf-8") as out:
        for sent in reservoir:
            out.write(sent)
            out.write("\n")
    print(f"sampled {len(reservoir)} of {seen} sentences", file=sys.stderr)


if __name__ == "__main__":
    main()
