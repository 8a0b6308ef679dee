"""Random generators and brute-force oracles shared by the tests."""

import random
from math import comb

from rhetabs.catalog import PreferenceRule, default_catalog
from rhetabs.tree import Leaf, Node

EXAMPLE_TAGS = ["EX", "EX", "ES", "EG", "EX", "SR"]
EXAMPLE_TREE = "[[[1 <EX> 2] <ES> [3 <EG> [4 <EX> 5]]] <SR> 6]"
EXAMPLE_PENALTIES = {1: 1, 2: 1, 3: 2, 4: 3, 5: 3, 6: 0}

TAG_IDS = [r.id for r in default_catalog().relations]
SELECTORS = TAG_IDS + ["*", "LeftNucleus", "RightNucleus", "BothNucleus"]


def catalan(m):
    return comb(2 * m, m) // (m + 1)


def count_shapes(n):
    """Number of binary bracketings of n leaves, by the split recursion."""
    table = [0, 1]
    for size in range(2, n + 1):
        table.append(sum(table[k] * table[size - k] for k in range(1, size)))
    return table[n]


def random_tags(rng: random.Random, n):
    return [rng.choice(TAG_IDS) for _ in range(n)]


def random_rules(rng: random.Random, max_rules=6):
    return [
        PreferenceRule(
            rng.choice(SELECTORS),
            rng.choice(["left", "right"]),
            rng.choice(SELECTORS),
            rng.randint(1, 3),
        )
        for _ in range(rng.randint(0, max_rules))
    ]


def random_tree(rng: random.Random, tags, i=1, j=None):
    """Uniform-split random tree over units i..j with relations from ``tags``."""
    j = len(tags) if j is None else j
    if i == j:
        return Leaf(i)
    k = rng.randint(i, j - 1)
    return Node(tags[k], random_tree(rng, tags, i, k), random_tree(rng, tags, k + 1, j))


FILLER = [
    "the estimator tracks the drift",
    "the buffer limits the peak load",
    "the filter reduces the noise floor",
    "the index doubles the query rate",
    "the sensor changes the output range",
]


def random_text(rng: random.Random, max_paras=3, max_sents=7):
    """Plain text whose sentences open with random lexicon connectives."""
    lex = [e.pattern for e in default_catalog().lexicon if e.position == "start"]
    paras = []
    for _ in range(rng.randint(1, max_paras)):
        sents = []
        for _ in range(rng.randint(1, max_sents)):
            body = rng.choice(FILLER)
            if rng.random() < 0.6:
                conn = rng.choice(lex)
                sents.append(f"{conn[0].upper()}{conn[1:]}, {body}.")
            else:
                sents.append(f"{body[0].upper()}{body[1:]}.")
        paras.append(" ".join(sents))
    return "\n\n".join(paras)
