"""Minimum-penalty rhetorical tree construction.

For units ``1..n`` with tags ``t_1..t_n`` the node joining ``[i..k]`` and
``[k+1..j]`` always carries ``t_{k+1}``, the relation of unit ``k+1`` to the
text before it. The tag of unit 1 is never used.

``parse`` is a chart dynamic program over spans keyed by the root relation;
``enumerate_candidates`` is the brute-force generator kept as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from rhetabs.catalog import PreferenceRule, RelationCatalog, default_catalog
from rhetabs.ingest import Document, SegmentConstraint, detect_segments
from rhetabs.tree import Leaf, Node, Tree, internal_nodes, root_relation, spans

MAX_ENUMERATION = 12


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class ParseResult:
    tree: Tree
    penalty: int
    candidates: Optional[int] = None


@dataclass(frozen=True)
class DocumentParse:
    paragraphs: tuple[ParseResult, ...]
    inter: ParseResult
    constraints: tuple[tuple[SegmentConstraint, ...], ...] = field(default=())


def compile_rules(rules, catalog: RelationCatalog | None = None) -> Mapping:
    """Accept a ready penalty table or an iterable of PreferenceRule."""
    if rules is None:
        return {}
    if isinstance(rules, Mapping):
        return rules
    rules = tuple(rules)
    if not rules:
        return {}
    if all(isinstance(r, PreferenceRule) for r in rules):
        return (catalog or default_catalog()).rule_table(rules)
    raise TypeError("rules must be a penalty table or PreferenceRule objects")


def _node_penalty(table: Mapping, node: Node) -> int:
    total = 0
    for pos, child in (("left", node.left), ("right", node.right)):
        croot = root_relation(child)
        if croot is not None:
            total += table.get((node.relation, pos, croot), 0)
    return total


def score_tree(tree: Tree, rules, catalog: RelationCatalog | None = None) -> int:
    table = compile_rules(rules, catalog)
    if not table:
        return 0
    return sum(_node_penalty(table, n) for n in internal_nodes(tree))


def _check_constraints(n: int, constraints: Iterable[SegmentConstraint]) -> list:
    cons = list(constraints)
    for c in cons:
        if c.end > n:
            raise ParseError(f"constraint [{c.start}, {c.end}] exceeds {n} units")
    for a in range(len(cons)):
        for b in range(a + 1, len(cons)):
            if cons[a].crosses(cons[b]):
                raise ParseError("segment constraints are not laminar")
    return cons


def enumerate_candidates(
    tags: Sequence[str],
    constraints: Iterable[SegmentConstraint] = (),
    limit: int = MAX_ENUMERATION,
) -> list[Tree]:
    """Every binary tree over ``1..n`` containing a node for each constraint span.

    Trees come out in preference order: larger left part first at the root,
    then recursively left subtree before right subtree.
    """
    n = len(tags)
    if n < 1:
        raise ParseError("empty relation sequence")
    if n > limit:
        raise ParseError(f"enumeration limited to {limit} units, got {n}")
    cons = _check_constraints(n, constraints)

    def gen(i, j):
        if i == j:
            yield Leaf(i)
            return
        for k in range(j - 1, i - 1, -1):
            for left in gen(i, k):
                for right in gen(k + 1, j):
                    yield Node(tags[k], left, right)

    out = []
    for t in gen(1, n):
        have = spans(t) | {(i, i) for i in range(1, n + 1)}
        if all((c.start, c.end) in have for c in cons):
            out.append(t)
    return out


def parse(
    tags: Sequence[str],
    constraints: Iterable[SegmentConstraint] = (),
    rules=None,
    catalog: RelationCatalog | None = None,
    oracle: bool = False,
) -> ParseResult:
    """Lowest-penalty tree; ties go to the most left-branching candidate."""
    n = len(tags)
    if n < 1:
        raise ParseError("empty relation sequence")
    table = compile_rules(rules, catalog)
    if oracle:
        cands = enumerate_candidates(tags, constraints)
        best, best_score = None, None
        for t in cands:
            s = score_tree(t, table)
            if best_score is None or s < best_score:
                best, best_score = t, s
        return ParseResult(best, best_score, len(cands))

    cons = _check_constraints(n, constraints)

    def valid(i, j):
        return not any(c.start < i <= c.end < j or i < c.start <= j < c.end for c in cons)

    # chart[(i, j)][root] = (cost, split, left_root, right_root); leaves have root None
    chart: dict[tuple[int, int], dict] = {(i, i): {None: (0, None, None, None)} for i in range(1, n + 1)}

    def attach(cell, rel, pos):
        best = None
        for root, (cost, split, _, _) in cell.items():
            c = cost + (table.get((rel, pos, root), 0) if root is not None else 0)
            key = (c, -(split or 0))
            if best is None or key < best[0]:
                best = (key, root)
        return best[0][0], best[1]

    for width in range(2, n + 1):
        for i in range(1, n - width + 2):
            j = i + width - 1
            if not valid(i, j):
                continue
            cell: dict = {}
            for k in range(j - 1, i - 1, -1):
                lcell = chart.get((i, k))
                rcell = chart.get((k + 1, j))
                if not lcell or not rcell:
                    continue
                rel = tags[k]
                lcost, lroot = attach(lcell, rel, "left")
                rcost, rroot = attach(rcell, rel, "right")
                total = lcost + rcost
                if rel not in cell or total < cell[rel][0]:
                    cell[rel] = (total, k, lroot, rroot)
            if cell:
                chart[(i, j)] = cell

    top = chart.get((1, n))
    if not top:
        raise ParseError("no tree satisfies the segment constraints")
    root = min(top, key=lambda r: (top[r][0], -(top[r][1] or 0)))

    def build(i, j, rel) -> Tree:
        if i == j:
            return Leaf(i)
        _, k, lroot, rroot = chart[(i, j)][rel]
        return Node(tags[k], build(i, k, lroot), build(k + 1, j, rroot))

    return ParseResult(build(1, n, root), top[root][0])


def parse_document(doc: Document, catalog: RelationCatalog | None = None, segments: bool = True) -> DocumentParse:
    """Sentence-level trees per paragraph, then one tree over paragraphs.

    Paragraph ``k`` enters the upper layer with the tag of its first sentence.
    """
    catalog = catalog or default_catalog()
    table = catalog.rule_table()
    results = []
    all_cons = []
    for para in doc.paragraphs:
        cons = tuple(detect_segments(para, catalog)) if segments else ()
        all_cons.append(cons)
        results.append(parse(para.tags, cons, table))
    inter = parse([p.sentences[0].tag for p in doc.paragraphs], (), table)
    return DocumentParse(tuple(results), inter, tuple(all_cons))
