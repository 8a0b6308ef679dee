"""Key-sentence coverage of generated abstracts over an annotated corpus.

Manifest format, one document per line (``#`` starts a comment)::

    path/to/doc.txt    1:2,1:6,2:1    1:6

fields are whitespace-separated: document path (relative to the manifest),
comma-separated ``para:sent`` key sentences, and the most important one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional

from rhetabs.abstractor import reduce_document
from rhetabs.catalog import RelationCatalog, default_catalog
from rhetabs.ingest import Document, split_document, tag_relations
from rhetabs.parser import parse_document


class ManifestError(ValueError):
    pass


class AnnotationError(ValueError):
    pass


SentenceId = tuple[int, int]


def parse_sentence_id(text: str) -> SentenceId:
    try:
        p, s = text.split(":")
        ident = (int(p), int(s))
    except ValueError:
        raise ManifestError(f"bad sentence id {text!r}, expected para:sent") from None
    if min(ident) < 1:
        raise ManifestError(f"bad sentence id {text!r}, indices start at 1")
    return ident


@dataclass(frozen=True)
class GoldAnnotation:
    doc_id: str
    keys: frozenset
    most_important: SentenceId

    def __post_init__(self):
        if not self.keys:
            raise AnnotationError(f"{self.doc_id}: empty key sentence set")
        if self.most_important not in self.keys:
            raise AnnotationError(f"{self.doc_id}: most important sentence is not a key sentence")

    def check(self, doc: Document) -> None:
        valid = set(doc.sentence_ids())
        dangling = sorted((self.keys | {self.most_important}) - valid)
        if dangling:
            ids = ", ".join(f"{p}:{s}" for p, s in dangling)
            raise AnnotationError(f"{self.doc_id}: annotation refers to missing sentence(s) {ids}")


@dataclass(frozen=True)
class DocumentScore:
    doc_id: str
    n_sentences: int
    n_kept: int
    length_ratio: Fraction
    key_coverage: Fraction
    most_important: Fraction


def _fmt(x: Fraction) -> str:
    return f"{x.numerator / x.denominator:.6f}"


@dataclass(frozen=True)
class CoverageReport:
    rows: tuple[DocumentScore, ...]
    ratio: str = ""

    def _mean(self, attr) -> Fraction:
        if not self.rows:
            return Fraction(0)
        return sum((getattr(r, attr) for r in self.rows), Fraction(0)) / len(self.rows)

    @property
    def length_ratio(self) -> Fraction:
        return self._mean("length_ratio")

    @property
    def key_coverage(self) -> Fraction:
        return self._mean("key_coverage")

    @property
    def most_important(self) -> Fraction:
        return self._mean("most_important")

    def records(self) -> list[str]:
        lines = [
            f"doc={r.doc_id} sentences={r.n_sentences} kept={r.n_kept} "
            f"length_ratio={_fmt(r.length_ratio)} key_coverage={_fmt(r.key_coverage)} "
            f"most_important={_fmt(r.most_important)}"
            for r in self.rows
        ]
        lines.append(
            f"corpus docs={len(self.rows)} length_ratio={_fmt(self.length_ratio)} "
            f"key_coverage={_fmt(self.key_coverage)} most_important={_fmt(self.most_important)}"
        )
        return lines

    def table(self) -> str:
        width = max([len("document"), *(len(r.doc_id) for r in self.rows)])
        head = f"{'document':<{width}}  {'sents':>5}  {'kept':>4}  {'length':>8}  {'key':>8}  {'most':>8}"
        out = [head, "-" * len(head)]
        for r in self.rows:
            out.append(
                f"{r.doc_id:<{width}}  {r.n_sentences:>5}  {r.n_kept:>4}  "
                f"{_fmt(r.length_ratio):>8}  {_fmt(r.key_coverage):>8}  {_fmt(r.most_important):>8}"
            )
        out.append("-" * len(head))
        out.append(
            f"{'average':<{width}}  {'':>5}  {'':>4}  {_fmt(self.length_ratio):>8}  "
            f"{_fmt(self.key_coverage):>8}  {_fmt(self.most_important):>8}"
        )
        return "\n".join(out)


def score_document(
    doc: Document,
    gold: GoldAnnotation,
    kept: Iterable[SentenceId],
    char_ratio: bool = False,
) -> DocumentScore:
    kept = set(kept)
    if char_ratio:
        total = sum(len(doc.sentence(*i).text) for i in doc.sentence_ids())
        length = Fraction(sum(len(doc.sentence(*i).text) for i in kept), total)
    else:
        length = Fraction(len(kept), doc.n_sentences)
    return DocumentScore(
        doc_id=gold.doc_id,
        n_sentences=doc.n_sentences,
        n_kept=len(kept),
        length_ratio=length,
        key_coverage=Fraction(len(kept & gold.keys), len(gold.keys)),
        most_important=Fraction(int(gold.most_important in kept)),
    )


def evaluate(
    corpus: Iterable[tuple[Document, GoldAnnotation]],
    ratio,
    catalog: Optional[RelationCatalog] = None,
    char_ratio: bool = False,
) -> CoverageReport:
    """Generate an abstract per document at ``ratio`` and score it against the gold keys.

    Corpus averages are unweighted means over documents.
    """
    catalog = catalog or default_catalog()
    rows = []
    for doc, gold in corpus:
        gold.check(doc)
        tagged = tag_relations(doc, catalog)
        result = reduce_document(parse_document(tagged, catalog), ratio, catalog, label=gold.doc_id)
        rows.append(score_document(tagged, gold, result.kept, char_ratio))
    return CoverageReport(tuple(rows), str(ratio))


def read_manifest(path: str | Path) -> list[tuple[Path, GoldAnnotation]]:
    path = Path(path)
    entries = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ManifestError(f"{path}:{lineno}: expected 3 fields, got {len(fields)}")
        doc_path, keys, most = fields
        try:
            gold = GoldAnnotation(
                doc_id=Path(doc_path).stem,
                keys=frozenset(parse_sentence_id(k) for k in keys.split(",") if k),
                most_important=parse_sentence_id(most),
            )
        except (ManifestError, AnnotationError) as exc:
            raise ManifestError(f"{path}:{lineno}: {exc}") from None
        entries.append((path.parent / doc_path, gold))
    return entries


def load_corpus(manifest: str | Path, one_sentence_per_line: bool = False):
    return [
        (split_document(p.read_text(encoding="utf-8"), one_sentence_per_line), gold)
        for p, gold in read_manifest(manifest)
    ]
