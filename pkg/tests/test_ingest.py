import logging

import pytest
from hypothesis import given, strategies as st

from rhetabs.catalog import BOTH, RelationCatalog, RelationTag
from rhetabs.ingest import (
    IngestError,
    SegmentConstraint,
    detect_segments,
    make_laminar,
    split_document,
    tag_relations,
)

from helpers import EXAMPLE_TAGS


def test_example_splits_into_six_sentences(example_text):
    doc = split_document(example_text)
    assert len(doc) == 1
    assert len(doc.paragraphs[0]) == 6


def test_minimal_split():
    doc = split_document("A. B.")
    assert [s.text for s in doc.paragraphs[0].sentences] == ["A.", "B."]


def test_blank_line_separates_paragraphs():
    doc = split_document("P1.\n\nP2.")
    assert [len(p) for p in doc.paragraphs] == [1, 1]
    assert [p.index for p in doc.paragraphs] == [1, 2]


def test_abbreviations_do_not_split():
    doc = split_document("See Dr. Smith for details, e.g. the tree. It is binary.")
    assert len(doc.paragraphs[0]) == 2


def test_question_and_exclamation():
    doc = split_document("Why? Because! Fine.")
    assert len(doc.paragraphs[0]) == 3


@pytest.mark.parametrize("raw", ["", "   \n\n  "])
def test_empty_input(raw):
    with pytest.raises(IngestError):
        split_document(raw)


def test_one_sentence_per_line():
    doc = split_document("first line. still first\nsecond\n\nthird", one_sentence_per_line=True)
    assert [[s.text for s in p.sentences] for p in doc.paragraphs] == [
        ["first line. still first", "second"], ["third"],
    ]


def test_example_tags(example_doc):
    para = example_doc.paragraphs[0]
    assert para.tags == EXAMPLE_TAGS
    assert [s.connective for s in para.sentences] == [None, None, "particularly", "For example", None, "Thus"]


def test_untagged_sentence_defaults_to_extension(catalog):
    doc = tag_relations(split_document("Nothing special here."), catalog)
    s = doc.paragraphs[0].sentences[0]
    assert s.tag == "EX" and s.connective is None


def test_empty_lexicon_gives_all_extension(example_text):
    bare = RelationCatalog((RelationTag("EX", "extension", BOTH),))
    doc = tag_relations(split_document(example_text), bare)
    assert set(doc.paragraphs[0].tags) == {"EX"}


def test_start_patterns_need_word_boundary(catalog):
    doc = tag_relations(split_document("Butter melts. Thusly it goes. But not here."), catalog)
    assert doc.paragraphs[0].tags == ["EX", "EX", "NG"]


def test_longest_pattern_wins(catalog):
    doc = tag_relations(split_document("That is to say, it holds. This is because it holds."), catalog)
    assert doc.paragraphs[0].tags == ["RF", "RS"]
    assert doc.paragraphs[0].sentences[0].connective == "That is to say"


def test_rendered_capitalizes_start_connective(catalog):
    doc = tag_relations(split_document("thus, it holds."), catalog)
    assert doc.paragraphs[0].sentences[0].rendered() == "Thus, it holds."


def _para(text, catalog):
    return tag_relations(split_document(text), catalog).paragraphs[0]


def test_enumeration_segment(catalog):
    para = _para("There are 3 reasons. First, a. Second, b. Third, c. So it goes.", catalog)
    assert detect_segments(para, catalog) == [SegmentConstraint(2, 4, "enumeration")]


def test_no_markers_no_segments(catalog, example_doc):
    assert detect_segments(example_doc.paragraphs[0], catalog) == []


def test_concession_segment(catalog):
    para = _para("Of course, it is slow. But it is correct. It ships.", catalog)
    assert detect_segments(para, catalog) == [SegmentConstraint(1, 2, "concession")]


def test_lone_first_is_not_an_enumeration(catalog):
    para = _para("First, a. Then b. Finally c.", catalog)
    assert detect_segments(para, catalog) == []


def test_overlap_keeps_longer_and_warns(caplog):
    with caplog.at_level(logging.WARNING):
        kept = make_laminar([SegmentConstraint(1, 3, "a"), SegmentConstraint(2, 5, "b")])
    assert kept == [SegmentConstraint(2, 5, "b")]
    assert "dropping" in caplog.text


def test_nested_segments_both_kept():
    kept = make_laminar([SegmentConstraint(2, 3, "a"), SegmentConstraint(1, 5, "b")])
    assert len(kept) == 2


# text made of words, connectives, punctuation and whitespace runs
_piece = st.sampled_from(
    ["Thus,", "But", "for example", "word", "Of course,", "First,", "Second,", "e.g.", "Fig.",
     ".", "!", "?", " ", "  ", "\n", "\t", "x."]
)


@given(st.lists(_piece, min_size=1, max_size=40).map("".join).filter(str.strip))
def test_reconstruction_and_totality(raw):
    from rhetabs.catalog import default_catalog

    cat = default_catalog()
    doc = tag_relations(split_document(raw), cat)
    blocks = [p.raw for p in doc.paragraphs]
    for block, para in zip(blocks, doc.paragraphs):
        assert "".join(s.text + s.sep for s in para.sentences) == block
        assert all(s.tag for s in para.sentences)
        assert all(s.tag == "EX" for s in para.sentences if s.connective is None)
        n = len(para)
        cons = detect_segments(para, cat)
        for c in cons:
            assert 1 <= c.start < c.end <= n
        for a in cons:
            for b in cons:
                assert not a.crosses(b)
    # paragraphs are the stripped blank-line blocks of the input
    assert " ".join(blocks).split() == raw.split()
