"""Sentence penalties from nucleus classes, structure reduction and rendering."""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from rhetabs.catalog import BOTH, LEFT, RIGHT, RelationCatalog, default_catalog
from rhetabs.ingest import Document
from rhetabs.parser import DocumentParse
from rhetabs.tree import Leaf, Tree

log = logging.getLogger(__name__)

# (left increment, right increment) applied to children of a node
INCREMENTS = {RIGHT: (1, 0), LEFT: (0, 1), BOTH: (0, 0)}


class TargetError(ValueError):
    pass


@dataclass(frozen=True)
class PenaltyAnnotation:
    # keyed by the (first, last) unit span of each node, leaves included
    nodes: dict
    leaves: dict

    def of(self, tree: Tree) -> int:
        return self.nodes[(tree.first, tree.last)]


@dataclass(frozen=True)
class AbstractSelection:
    kept: tuple[int, ...]
    threshold: int
    rendered: str = ""
    paragraph: int = 1


@dataclass(frozen=True)
class DocumentAbstract:
    kept: tuple[tuple[int, int], ...]
    paragraphs: tuple[AbstractSelection, ...]
    dropped: tuple[int, ...]
    budget: int
    penalties: tuple[PenaltyAnnotation, ...] = field(default=(), repr=False)
    inter_penalties: Optional[PenaltyAnnotation] = field(default=None, repr=False)
    rendered: str = ""


def propagate_penalties(tree: Tree, catalog: RelationCatalog | None = None) -> PenaltyAnnotation:
    """Push satellite penalties from the root down to the leaves.

    The root gets 0; a satellite child gets its parent's penalty plus one,
    a nucleus child inherits it unchanged.
    """
    catalog = catalog or default_catalog()
    nodes = {}
    leaves = {}
    stack = [(tree, 0)]
    while stack:
        t, p = stack.pop()
        nodes[(t.first, t.last)] = p
        if isinstance(t, Leaf):
            leaves[t.index] = p
            continue
        try:
            dl, dr = INCREMENTS[catalog.nucleus_of(t.relation)]
        except KeyError:
            raise KeyError(f"relation {t.relation!r} has no nucleus class in the catalog") from None
        stack.append((t.left, p + dl))
        stack.append((t.right, p + dr))
    return PenaltyAnnotation(nodes, dict(sorted(leaves.items())))


def reduction_order(leaf_penalties: dict) -> list[int]:
    """Units in the order they are cut: highest penalty first, later units first on ties."""
    return sorted(leaf_penalties, key=lambda u: (-leaf_penalties[u], -u))


def reduce(tree: Tree, annotation: PenaltyAnnotation, target: int) -> AbstractSelection:
    """Cut whole highest-penalty levels while the target is not undershot,
    then trim the next level from the end of the text to hit ``target`` exactly.
    """
    pens = annotation.leaves
    n = len(pens)
    if not 1 <= target <= n:
        raise TargetError(f"target must be in 1..{n}, got {target}")
    kept = set(pens)
    for unit in reduction_order(pens)[: n - target]:
        kept.discard(unit)
    threshold = max(pens[u] for u in kept)
    return AbstractSelection(tuple(sorted(kept)), threshold)


def threshold_cut(annotation: PenaltyAnnotation, threshold: int) -> tuple[int, ...]:
    return tuple(u for u, p in annotation.leaves.items() if p <= threshold)


def check_gradation(annotation: PenaltyAnnotation, label: str = "") -> bool:
    """Warn when most leaves share one penalty, so reduction cannot grade them."""
    n = len(annotation.leaves)
    if n < 3:
        return True
    value, count = Counter(annotation.leaves.values()).most_common(1)[0]
    if count * 2 > n:
        log.warning(
            "%s%d of %d sentences share penalty %d; the structure gives little ranking",
            f"{label}: " if label else "", count, n, value,
        )
        return False
    return True


def sentence_budget(ratio, n: int) -> int:
    """``ratio * n`` rounded half up, at least 1."""
    exact = Fraction(str(ratio)) * n
    return max(1, math.floor(exact + Fraction(1, 2)))


def reduce_document(
    parsed: DocumentParse,
    ratio=None,
    catalog: RelationCatalog | None = None,
    budget: Optional[int] = None,
    doc: Optional[Document] = None,
    label: str = "",
) -> DocumentAbstract:
    """Reduce each paragraph to its share, then drop whole paragraphs by the
    inter-paragraph penalties until the document budget is met.

    Give ``ratio`` in (0, 1], or an absolute sentence ``budget``.
    """
    catalog = catalog or default_catalog()
    sizes = [_leaf_count(r.tree) for r in parsed.paragraphs]
    total = sum(sizes)
    if budget is None:
        if ratio is None or not 0 < float(ratio) <= 1:
            raise TargetError(f"ratio must be in (0, 1], got {ratio}")
        budget = sentence_budget(ratio, total)
        shares = [sentence_budget(ratio, s) for s in sizes]
    else:
        if not 1 <= budget <= total:
            raise TargetError(f"sentence count must be in 1..{total}, got {budget}")
        shares = [min(s, max(1, math.ceil(Fraction(budget * s, total)))) for s in sizes]

    annotations = []
    selections = []
    for p, (res, share) in enumerate(zip(parsed.paragraphs, shares), 1):
        ann = propagate_penalties(res.tree, catalog)
        check_gradation(ann, f"{label + ' ' if label else ''}paragraph {p}")
        annotations.append(ann)
        sel = reduce(res.tree, ann, share)
        selections.append(AbstractSelection(sel.kept, sel.threshold, paragraph=p))

    inter = propagate_penalties(parsed.inter.tree, catalog)
    count = sum(len(s.kept) for s in selections)
    alive = set(range(1, len(selections) + 1))
    dropped = []
    for p in reduction_order(inter.leaves):
        if count <= budget or len(alive) == 1:
            break
        alive.discard(p)
        dropped.append(p)
        count -= len(selections[p - 1].kept)

    kept = tuple((s.paragraph, i) for s in selections if s.paragraph in alive for i in s.kept)
    result = DocumentAbstract(
        kept=kept,
        paragraphs=tuple(selections),
        dropped=tuple(sorted(dropped)),
        budget=budget,
        penalties=tuple(annotations),
        inter_penalties=inter,
    )
    if doc is not None:
        result = replace(result, rendered=render_abstract(result, doc))
    return result


def _leaf_count(tree: Tree) -> int:
    return tree.last - tree.first + 1


def _kept_pairs(selection) -> list[tuple[int, int]]:
    kept = selection.kept if hasattr(selection, "kept") else selection
    para = getattr(selection, "paragraph", 1)
    pairs = []
    for k in kept:
        pairs.append(tuple(k) if isinstance(k, (tuple, list)) else (para, k))
    return sorted(pairs)


def render_abstract(selection, doc: Document) -> str:
    """Kept sentences in document order with their connectives restored.

    Sentences of one paragraph are joined by a space, paragraphs by a blank line.
    """
    blocks: list[list[str]] = []
    last_para = None
    for p, s in _kept_pairs(selection):
        sent = doc.sentence(p, s)
        if p != last_para:
            blocks.append([])
            last_para = p
        blocks[-1].append(sent.rendered().strip())
    return "\n\n".join(" ".join(b) for b in blocks)


def render_annotated(result: DocumentAbstract, doc: Document) -> str:
    """One line per kept sentence, prefixed ``[para:sent p=penalty]``."""
    lines = []
    for p, s in result.kept:
        pen = result.penalties[p - 1].leaves[s]
        lines.append(f"[{p}:{s} p={pen}] {doc.sentence(p, s).rendered().strip()}")
    return "\n".join(lines)


def format_penalty_tree(tree: Tree, annotation: PenaltyAnnotation) -> str:
    """Bracket notation with ``:penalty`` after every leaf and subtree."""
    if isinstance(tree, Leaf):
        return f"{tree.index}:{annotation.of(tree)}"
    return (
        f"[{format_penalty_tree(tree.left, annotation)} <{tree.relation}> "
        f"{format_penalty_tree(tree.right, annotation)}]:{annotation.of(tree)}"
    )
