#!/usr/bin/env python3
"""Key-sentence coverage of an annotated corpus across abstract length ratios."""

import argparse
import logging

from rhetabs.catalog import default_catalog, load_catalog_file
from rhetabs.evaluation import evaluate, load_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("manifest")
    ap.add_argument("--catalog")
    ap.add_argument("--steps", type=int, default=10)
    ap.add_argument("--char-ratio", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.ERROR)

    catalog = load_catalog_file(args.catalog) if args.catalog else default_catalog()
    corpus = load_corpus(args.manifest)
    print(f"{'ratio':>6}  {'length':>8}  {'key':>8}  {'most':>8}")
    for i in range(1, args.steps + 1):
        ratio = round(i / args.steps, 6)
        rep = evaluate(corpus, ratio, catalog, args.char_ratio)
        print(
            f"{ratio:>6.2f}  {float(rep.length_ratio):>8.4f}  "
            f"{float(rep.key_coverage):>8.4f}  {float(rep.most_important):>8.4f}"
        )


if __name__ == "__main__":
    main()
