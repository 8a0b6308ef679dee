#!/usr/bin/env python3
"""Brute-force recomputation of the coverage report for an annotated corpus.

Only sentence splitting, connective tagging and segment detection come from
the package. Trees are found by exhaustive enumeration, penalties, reduction
and metrics are recomputed here from the raw catalog JSON, and the result is
written in the same key=value record format that ``rhetabs eval`` prints.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from rhetabs.catalog import load_catalog
from rhetabs.ingest import detect_segments, split_document, tag_relations

ROOT = Path(__file__).resolve().parent.parent
DEFAULT_CATALOG = ROOT / "src" / "rhetabs" / "data" / "default_catalog.json"


def all_trees(i, j, tags):
    """Trees as (split, left, right) tuples; leaves are ints."""
    if i == j:
        return [i]
    out = []
    for k in range(i, j):
        for left in all_trees(i, k, tags):
            for right in all_trees(k + 1, j, tags):
                out.append((k, left, right))
    return out


def span(t):
    if isinstance(t, int):
        return t, t
    return span(t[1])[0], span(t[2])[1]


def node_spans(t):
    if isinstance(t, int):
        return []
    return [span(t)] + node_spans(t[1]) + node_spans(t[2])


def preorder_splits(t):
    if isinstance(t, int):
        return []
    return [t[0]] + preorder_splits(t[1]) + preorder_splits(t[2])


class Rules:
    def __init__(self, raw):
        self.nucleus = {r["id"]: r["nucleus"] for r in raw["relations"]}
        self.prefs = raw.get("preferences", [])

    def sel(self, selector, tag):
        return selector == "*" or selector == tag or self.nucleus.get(tag) == selector

    def penalty(self, t, tags):
        if isinstance(t, int):
            return 0
        k, left, right = t
        rel = tags[k]  # tag of unit k+1 (tags is 0-based)
        total = self.penalty(left, tags) + self.penalty(right, tags)
        for pref in self.prefs:
            child = left if pref["child_position"] == "left" else right
            if isinstance(child, int) or not self.sel(pref["parent"], rel):
                continue
            if self.sel(pref["child_root"], tags[child[0]]):
                total += pref.get("penalty", 1)
        return total

    def leaf_penalties(self, t, tags, p=0, out=None):
        out = {} if out is None else out
        if isinstance(t, int):
            out[t] = p
            return out
        cls = self.nucleus[tags[t[0]]]
        self.leaf_penalties(t[1], tags, p + (cls == "RightNucleus"), out)
        self.leaf_penalties(t[2], tags, p + (cls == "LeftNucleus"), out)
        return out


def best_tree(tags, spans_required, rules):
    n = len(tags)
    cands = [t for t in all_trees(1, n, tags)
             if all(s in node_spans(t) or s[0] == s[1] for s in spans_required)]
    return min(cands, key=lambda t: (rules.penalty(t, tags), [-k for k in preorder_splits(t)]))


def cut(pens, target):
    """Remove whole top levels while that leaves at least target; then tail-trim."""
    kept = set(pens)
    while len(kept) > target:
        top = max(pens[u] for u in kept)
        level = sorted(u for u in kept if pens[u] == top)
        if len(kept) - len(level) >= target:
            kept -= set(level)
        else:
            excess = len(kept) - target
            kept -= set(level[len(level) - excess:])
    return kept


def half_up(x):
    return max(1, int(x + Fraction(1, 2)))


def abstract(doc, catalog, rules, ratio):
    r = Fraction(ratio)
    kept_by_para = {}
    for para in doc.paragraphs:
        tags = para.tags
        cons = [(c.start, c.end) for c in detect_segments(para, catalog)]
        tree = best_tree(tags, cons, rules)
        pens = rules.leaf_penalties(tree, tags)
        kept_by_para[para.index] = cut(pens, half_up(r * len(para)))
    budget = half_up(r * doc.n_sentences)
    ptags = [p.sentences[0].tag for p in doc.paragraphs]
    ptree = best_tree(ptags, [], rules)
    ppens = rules.leaf_penalties(ptree, ptags)
    alive = set(kept_by_para)
    count = sum(len(v) for v in kept_by_para.values())
    for p in sorted(ppens, key=lambda u: (-ppens[u], -u)):
        if count <= budget or len(alive) == 1:
            break
        alive.discard(p)
        count -= len(kept_by_para[p])
    return {(p, s) for p in alive for s in kept_by_para[p]}


def fmt(x):
    return f"{x.numerator / x.denominator:.6f}"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("manifest", type=Path)
    ap.add_argument("--ratio", default="0.3")
    ap.add_argument("--catalog", type=Path, default=DEFAULT_CATALOG)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    raw_text = args.catalog.read_text(encoding="utf-8")
    catalog = load_catalog(raw_text)
    rules = Rules(json.loads(raw_text))
    lines, rows = [], []
    for line in args.manifest.read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        path, keys, most = line.split()
        keys = {tuple(int(x) for x in k.split(":")) for k in keys.split(",")}
        most = tuple(int(x) for x in most.split(":"))
        doc = tag_relations(split_document((args.manifest.parent / path).read_text(encoding="utf-8")), catalog)
        kept = abstract(doc, catalog, rules, args.ratio)
        row = (Fraction(len(kept), doc.n_sentences), Fraction(len(kept & keys), len(keys)),
               Fraction(int(most in kept)))
        rows.append(row)
        lines.append(
            f"doc={Path(path).stem} sentences={doc.n_sentences} kept={len(kept)} "
            f"length_ratio={fmt(row[0])} key_coverage={fmt(row[1])} most_important={fmt(row[2])}"
        )
    means = [sum((r[i] for r in rows), Fraction(0)) / len(rows) for i in range(3)]
    lines.append(
        f"corpus docs={len(rows)} length_ratio={fmt(means[0])} "
        f"key_coverage={fmt(means[1])} most_important={fmt(means[2])}"
    )
    text = "\n".join(lines) + "\n"
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
