#!/usr/bin/env python3
"""Write the synthetic annotated corpus used by the evaluation tests.

Documents are random expository paragraphs built from filler sentences and
connectives of the built-in English lexicon; gold key sentences are drawn at
random. Output: data/synthetic/docNN.txt and data/synthetic/manifest.tsv.
"""

import argparse
import random
from pathlib import Path

SUBJECTS = ["the filter", "the sensor", "the model", "the estimator", "the signal",
            "the controller", "the sample rate", "the buffer", "the network", "the index"]
VERBS = ["reduces", "improves", "limits", "changes", "stabilizes", "predicts", "tracks", "doubles"]
OBJECTS = ["the error rate", "the response time", "the noise floor", "the memory footprint",
           "the peak load", "the output range", "the cost per query", "the drift"]

CONNECTIVES = {
    None: 10,
    "Thus,": 3, "Therefore,": 2, "But": 2, "However,": 2, "For example,": 3,
    "Of course,": 1, "Also,": 2, "In other words,": 1, "Because": 1, "After all,": 1,
    "Hitherto,": 1,
}


def sentence(rng: random.Random, connective=None) -> str:
    subj, verb, obj = rng.choice(SUBJECTS), rng.choice(VERBS), rng.choice(OBJECTS)
    body = f"{subj} {verb} {obj} by {rng.randint(2, 90)} percent"
    if rng.random() < 0.3:
        body += " " + rng.choice(["in most runs", "under load", "at low power", "on average"])
    if connective is None:
        return body[0].upper() + body[1:] + "."
    return f"{connective} {body}."


def paragraph(rng: random.Random) -> list[str]:
    n = rng.randint(2, 7)
    names = list(CONNECTIVES)
    weights = [CONNECTIVES[c] for c in names]
    sents = [sentence(rng, rng.choices(names, weights)[0]) for _ in range(n)]
    if n >= 5 and rng.random() < 0.3:
        start = rng.randint(1, n - 3)
        for k, word in enumerate(["First,", "Second,", "Third,"]):
            sents[start + k] = sentence(rng, word)
    return sents


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "synthetic")
    ap.add_argument("--docs", type=int, default=10)
    ap.add_argument("--seed", type=int, default=1994)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    manifest = ["# path\tkey sentences\tmost important"]
    for d in range(1, args.docs + 1):
        paras = [paragraph(rng) for _ in range(rng.randint(1, 3))]
        name = f"doc{d:02d}.txt"
        (args.out / name).write_text("\n\n".join(" ".join(p) for p in paras) + "\n", encoding="utf-8")
        ids = [(p, s) for p, para in enumerate(paras, 1) for s in range(1, len(para) + 1)]
        keys = sorted(rng.sample(ids, rng.randint(1, max(1, len(ids) // 3))))
        most = rng.choice(keys)
        manifest.append(
            f"{name}\t{','.join(f'{p}:{s}' for p, s in keys)}\t{most[0]}:{most[1]}"
        )
    (args.out / "manifest.tsv").write_text("\n".join(manifest) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
