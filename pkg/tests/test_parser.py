import random

import pytest
from hypothesis import given, settings, strategies as st

from rhetabs.catalog import PreferenceRule
from rhetabs.ingest import SegmentConstraint, split_document, tag_relations
from rhetabs.parser import ParseError, enumerate_candidates, parse, parse_document, score_tree
from rhetabs.tree import Leaf, format_bracket, internal_nodes, leaves, parse_bracket, spans

from helpers import EXAMPLE_TAGS, EXAMPLE_TREE, TAG_IDS, catalan, count_shapes, random_rules, random_tags


@pytest.mark.parametrize("n", range(1, 10))
def test_catalan_oracles_agree(n):
    assert count_shapes(n) == catalan(n - 1)


@pytest.mark.parametrize("n", range(2, 9))
def test_unconstrained_candidate_counts(n):
    cands = enumerate_candidates(["EX"] * n)
    assert len(cands) == count_shapes(n)
    assert len({format_bracket(t) for t in cands}) == len(cands)


def test_six_units_give_42():
    assert len(enumerate_candidates(EXAMPLE_TAGS)) == 42


def test_two_units():
    assert [format_bracket(t) for t in enumerate_candidates(["EX", "NG"])] == ["[1 <NG> 2]"]


def test_constraint_filters_candidates():
    cands = enumerate_candidates(["EX", "PA", "SR"], [SegmentConstraint(2, 3)])
    assert [format_bracket(t) for t in cands] == ["[1 <PA> [2 <SR> 3]]"]


def test_enumeration_size_limit():
    with pytest.raises(ParseError):
        enumerate_candidates(["EX"] * 13)


def test_penalized_substructure(catalog):
    bad = parse_bracket("[3 <EG> [[4 <EX> 5] <SR> 6]]")
    good = parse_bracket("[[3 <EG> [4 <EX> 5]] <SR> 6]")
    assert score_tree(bad, catalog.rule_table()) >= 1
    assert score_tree(good, catalog.rule_table()) == 0
    single_rule = [PreferenceRule("LeftNucleus", "right", "RightNucleus")]
    assert score_tree(bad, single_rule) == 1


def test_empty_rules_score_zero():
    assert score_tree(parse_bracket(EXAMPLE_TREE), []) == 0
    assert score_tree(parse_bracket(EXAMPLE_TREE), {}) == 0


def test_example_parse(catalog):
    res = parse(EXAMPLE_TAGS, rules=catalog.rule_table())
    assert format_bracket(res.tree) == EXAMPLE_TREE
    assert res.penalty == 0


def test_example_oracle_agrees(catalog):
    res = parse(EXAMPLE_TAGS, rules=catalog.rule_table(), oracle=True)
    assert format_bracket(res.tree) == EXAMPLE_TREE
    assert res.candidates == 42


def test_single_unit():
    res = parse(["SR"])
    assert res.tree == Leaf(1) and res.penalty == 0


def test_empty_sequence():
    with pytest.raises(ParseError):
        parse([])


def test_crossing_constraints_rejected():
    with pytest.raises(ParseError):
        parse(["EX"] * 5, [SegmentConstraint(1, 3), SegmentConstraint(2, 4)])


def test_ties_go_left_branching():
    assert format_bracket(parse(["EX"] * 4).tree) == "[[[1 <EX> 2] <EX> 3] <EX> 4]"


def test_inter_paragraph_sequence(catalog):
    text = "Intro here.\n\nBut it fails. It is slow.\n\nThus, we stop."
    doc = tag_relations(split_document(text), catalog)
    parsed = parse_document(doc, catalog)
    ptags = [p.sentences[0].tag for p in doc.paragraphs]
    assert ptags[1:] == ["NG", "SR"]
    table = catalog.rule_table()
    cands = enumerate_candidates(ptags)
    assert {format_bracket(t) for t in cands} == {"[[1 <NG> 2] <SR> 3]", "[1 <NG> [2 <SR> 3]]"}
    best = min(score_tree(t, table) for t in cands)
    assert parsed.inter.penalty == best
    assert format_bracket(parsed.inter.tree) == format_bracket(parse(ptags, rules=table, oracle=True).tree)


def test_single_paragraph_inter_is_leaf(example_doc, catalog):
    parsed = parse_document(example_doc, catalog)
    assert parsed.inter.tree == Leaf(1)
    assert format_bracket(parsed.paragraphs[0].tree) == EXAMPLE_TREE


def test_segments_enforced_in_document(catalog):
    text = "There are reasons. First, a. Second, b. Third, c. Thus, done."
    doc = tag_relations(split_document(text), catalog)
    parsed = parse_document(doc, catalog)
    assert (2, 4) in spans(parsed.paragraphs[0].tree)


def _check_shape(tree, tags):
    assert leaves(tree) == list(range(1, len(tags) + 1))
    for node in internal_nodes(tree):
        assert node.relation == tags[node.right.first - 1]


@st.composite
def laminar_constraints(draw, n):
    cons = []
    for _ in range(draw(st.integers(0, 3))):
        if n < 2:
            break
        s = draw(st.integers(1, n - 1))
        e = draw(st.integers(s + 1, n))
        c = SegmentConstraint(s, e)
        if not any(c.crosses(o) for o in cons):
            cons.append(c)
    return cons


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_chart_matches_enumeration(data):
    rng = data.draw(st.randoms(use_true_random=False))
    n = data.draw(st.integers(1, 7))
    tags = random_tags(rng, n)
    cons = data.draw(laminar_constraints(n))
    rules = random_rules(rng)
    fast = parse(tags, cons, rules)
    slow = parse(tags, cons, rules, oracle=True)
    assert fast.penalty == slow.penalty
    # same tie-break, so the very same tree
    assert fast.tree == slow.tree
    assert fast.penalty == score_tree(fast.tree, rules)
    _check_shape(fast.tree, tags)
    have = spans(fast.tree)
    assert all((c.start, c.end) in have for c in cons)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from(TAG_IDS), min_size=1, max_size=40), st.randoms(use_true_random=False))
def test_long_sequences_are_deterministic(tags, rng):
    rules = random_rules(rng)
    a = parse(tags, (), rules)
    b = parse(list(tags), (), list(rules))
    assert format_bracket(a.tree) == format_bracket(b.tree)
    _check_shape(a.tree, tags)
    assert a.penalty == score_tree(a.tree, rules)


def test_long_paragraph_is_fast(catalog):
    import time

    rng = random.Random(3)
    tags = random_tags(rng, 80)
    t0 = time.perf_counter()
    parse(tags, (), catalog.rule_table())
    assert time.perf_counter() - t0 < 10
