"""Paragraph/sentence splitting, connective tagging and segment detection."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

from rhetabs.catalog import DEFAULT_TAG, LexiconEntry, RelationCatalog

log = logging.getLogger(__name__)

ABBREVIATIONS = frozenset(
    """
    mr. mrs. ms. dr. prof. st. jr. sr. vs. cf. al. approx. e.g. i.e. fig. figs.
    eq. eqs. no. nos. vol. pp. p. ch. sec. dept. inc. ltd. co. jan. feb. mar.
    apr. jun. jul. aug. sep. sept. oct. nov. dec.
    """.split()
)

_BOUNDARY = re.compile(r"[.!?][\"')\]]*(\s+)")
_PARAGRAPH_BREAK = re.compile(r"\n[ \t\r\f\v]*\n\s*")


class IngestError(ValueError):
    pass


@dataclass(frozen=True)
class Sentence:
    index: int
    text: str
    # whitespace that followed the sentence inside its paragraph
    sep: str = ""
    connective: Optional[str] = None
    connective_span: Optional[tuple[int, int]] = None
    tag: str = DEFAULT_TAG

    def rendered(self) -> str:
        """Sentence text with its connective re-inserted in capitalized form."""
        if self.connective is None or self.connective_span is None:
            return self.text
        start, end = self.connective_span
        conn = self.connective
        if start == len(self.text) - len(self.text.lstrip()):
            conn = conn[:1].upper() + conn[1:]
        return self.text[:start] + conn + self.text[end:]


@dataclass(frozen=True)
class Paragraph:
    index: int
    sentences: tuple[Sentence, ...]

    def __post_init__(self):
        if not self.sentences:
            raise IngestError(f"paragraph {self.index} has no sentences")
        if [s.index for s in self.sentences] != list(range(1, len(self.sentences) + 1)):
            raise IngestError(f"paragraph {self.index}: sentence indices not contiguous from 1")

    def __len__(self):
        return len(self.sentences)

    @property
    def raw(self) -> str:
        return "".join(s.text + s.sep for s in self.sentences)

    @property
    def tags(self) -> list[str]:
        return [s.tag for s in self.sentences]


@dataclass(frozen=True)
class Document:
    paragraphs: tuple[Paragraph, ...]

    def __len__(self):
        return len(self.paragraphs)

    @property
    def n_sentences(self) -> int:
        return sum(len(p) for p in self.paragraphs)

    def sentence(self, para: int, sent: int) -> Sentence:
        return self.paragraphs[para - 1].sentences[sent - 1]

    def sentence_ids(self) -> list[tuple[int, int]]:
        return [(p.index, s.index) for p in self.paragraphs for s in p.sentences]


@dataclass(frozen=True)
class SegmentConstraint:
    start: int
    end: int
    kind: str = ""

    def __post_init__(self):
        if not 1 <= self.start < self.end:
            raise ValueError(f"bad constraint span [{self.start}, {self.end}]")

    def crosses(self, other: "SegmentConstraint") -> bool:
        return (
            self.start < other.start <= self.end < other.end
            or other.start < self.start <= other.end < self.end
        )


def _split_sentences(block: str) -> list[tuple[str, str]]:
    pieces = []
    pos = 0
    for m in _BOUNDARY.finditer(block):
        token = block[pos:m.start() + 1].rsplit(None, 1)[-1].lower()
        token = token.lstrip("\"'([")
        if token in ABBREVIATIONS:
            continue
        pieces.append((block[pos:m.start(1)], m.group(1)))
        pos = m.end()
    if pos < len(block):
        pieces.append((block[pos:], ""))
    return pieces


def split_document(raw: str, one_sentence_per_line: bool = False) -> Document:
    """Split text into blank-line-separated paragraphs of sentences.

    Sentence boundaries are terminal punctuation followed by whitespace,
    except after a known abbreviation. With ``one_sentence_per_line`` every
    non-blank line is taken as a sentence instead.
    """
    if not raw or not raw.strip():
        raise IngestError("empty input")
    paragraphs = []
    for block in _PARAGRAPH_BREAK.split(raw.strip()):
        block = block.strip()
        if not block:
            continue
        if one_sentence_per_line:
            lines = block.split("\n")
            pieces = []
            for i, line in enumerate(lines):
                if line.strip():
                    pieces.append((line, "\n" if i < len(lines) - 1 else ""))
                elif pieces:
                    pieces[-1] = (pieces[-1][0], pieces[-1][1] + line + "\n")
        else:
            pieces = _split_sentences(block)
        sentences = tuple(
            Sentence(index=i, text=text, sep=sep) for i, (text, sep) in enumerate(pieces, 1)
        )
        paragraphs.append(Paragraph(index=len(paragraphs) + 1, sentences=sentences))
    return Document(tuple(paragraphs))


@lru_cache(maxsize=4096)
def _entry_regex(pattern: str, position: str) -> re.Pattern:
    body = r"\s+".join(re.escape(w) for w in pattern.split())
    if position == "start":
        return re.compile(r"^\s*(" + body + r")(?!\w)", re.IGNORECASE)
    return re.compile(r"(?<!\w)(" + body + r")(?!\w)", re.IGNORECASE)


def match_connective(text: str, lexicon) -> Optional[tuple[LexiconEntry, int, int]]:
    """Best lexicon match in ``text``: longest pattern first, then highest priority."""
    best = None
    best_key = None
    for order, entry in enumerate(lexicon):
        m = _entry_regex(entry.pattern, entry.position).search(text)
        if m is None:
            continue
        key = (-len(" ".join(entry.words)), -entry.priority, order)
        if best_key is None or key < best_key:
            best_key = key
            best = (entry, m.start(1), m.end(1))
    return best


def tag_relations(doc: Document, catalog: RelationCatalog) -> Document:
    paragraphs = []
    for para in doc.paragraphs:
        sentences = []
        for s in para.sentences:
            hit = match_connective(s.text, catalog.lexicon)
            if hit is None:
                sentences.append(replace(s, tag=DEFAULT_TAG, connective=None, connective_span=None))
            else:
                entry, start, end = hit
                sentences.append(
                    replace(s, tag=entry.tag, connective=s.text[start:end], connective_span=(start, end))
                )
        paragraphs.append(replace(para, sentences=tuple(sentences)))
    return Document(tuple(paragraphs))


def _enumerator_rank(text: str, enumerators) -> Optional[int]:
    m = re.match(r"\s*(\w+)(?!\w)", text)
    if m is None:
        return None
    word = m.group(1).lower()
    return enumerators.index(word) if word in enumerators else None


def _enumerations(para: Paragraph, enumerators) -> list[SegmentConstraint]:
    ranks = [_enumerator_rank(s.text, enumerators) for s in para.sentences]
    found = []
    i = 0
    while i < len(ranks):
        if ranks[i] != 0:
            i += 1
            continue
        expect = 1
        last = i
        for j in range(i + 1, len(ranks)):
            if ranks[j] == expect:
                last = j
                expect += 1
            elif ranks[j] == 0:
                break
        if last > i:
            found.append(SegmentConstraint(i + 1, last + 1, "enumeration"))
            i = last + 1
        else:
            i += 1
    return found


def _concessions(para: Paragraph, opening, closing) -> list[SegmentConstraint]:
    found = []
    open_at = None
    for s in para.sentences:
        if s.connective is None:
            continue
        if s.tag in opening:
            open_at = s.index
        elif s.tag in closing and open_at is not None:
            found.append(SegmentConstraint(open_at, s.index, "concession"))
            open_at = None
    return found


def make_laminar(candidates) -> list[SegmentConstraint]:
    """Keep a laminar subfamily, preferring longer spans; dropped spans are logged."""
    kept: list[SegmentConstraint] = []
    for c in sorted(candidates, key=lambda c: (c.start - c.end, c.start)):
        if any(k.start == c.start and k.end == c.end for k in kept):
            continue
        clash = next((k for k in kept if k.crosses(c)), None)
        if clash is not None:
            log.warning(
                "dropping %s segment [%d, %d]: overlaps %s segment [%d, %d]",
                c.kind, c.start, c.end, clash.kind, clash.start, clash.end,
            )
            continue
        kept.append(c)
    return sorted(kept, key=lambda c: (c.start, -c.end))


def detect_segments(para: Paragraph, catalog: RelationCatalog) -> list[SegmentConstraint]:
    markers = catalog.segments
    found = _enumerations(para, markers.enumerators)
    found += _concessions(para, set(markers.concession_open), set(markers.concession_close))
    return make_laminar(found)
