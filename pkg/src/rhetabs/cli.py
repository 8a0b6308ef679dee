"""Command-line front end: ``parse``, ``summarize``, ``eval`` and ``catalog``."""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from rhetabs.abstractor import (
    TargetError,
    format_penalty_tree,
    reduce_document,
    render_annotated,
)
from rhetabs.catalog import CatalogError, RelationCatalog, default_catalog, load_catalog_file
from rhetabs.evaluation import AnnotationError, CoverageReport, ManifestError, evaluate, read_manifest
from rhetabs.ingest import Document, IngestError, split_document, tag_relations
from rhetabs.parser import DocumentParse, ParseError, parse_document
from rhetabs.tree import format_bracket, internal_nodes, leaves

EXIT_OK = 0
EXIT_IO = 2
EXIT_CONFIG = 3
EXIT_INTERNAL = 4

MODES = ("abstract", "tree", "penalties", "all")

log = logging.getLogger("rhetabs")


class InvariantError(RuntimeError):
    pass


@dataclass
class RunConfig:
    catalog_path: Optional[Path] = None
    inputs: list = field(default_factory=list)
    ratio: Optional[float] = None
    sentences: Optional[int] = None
    mode: str = "abstract"
    warnings: bool = True
    one_sentence_per_line: bool = False

    def __post_init__(self):
        if self.ratio is not None and self.sentences is not None:
            raise TargetError("give either a ratio or a sentence count, not both")
        if self.ratio is None and self.sentences is None:
            self.ratio = 0.3
        if self.ratio is not None and not 0 < self.ratio <= 1:
            raise TargetError(f"ratio must be in (0, 1], got {self.ratio}")
        if self.sentences is not None and self.sentences < 1:
            raise TargetError(f"sentence count must be at least 1, got {self.sentences}")
        if self.mode not in MODES:
            raise TargetError(f"unknown mode {self.mode!r}")

    def catalog(self) -> RelationCatalog:
        if self.catalog_path is None:
            return default_catalog()
        return load_catalog_file(self.catalog_path)


def _read(path) -> str:
    if str(path) == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _check_tree(tree, tags) -> None:
    n = len(tags)
    if leaves(tree) != list(range(1, n + 1)):
        raise InvariantError("tree leaves are not 1..n in order")
    for node in internal_nodes(tree):
        if node.relation != tags[node.right.first - 1]:
            raise InvariantError("node relation differs from its right part's first tag")


def analyse(text: str, catalog: RelationCatalog, one_per_line: bool) -> tuple[Document, DocumentParse]:
    doc = tag_relations(split_document(text, one_per_line), catalog)
    parsed = parse_document(doc, catalog)
    for para, res in zip(doc.paragraphs, parsed.paragraphs):
        _check_tree(res.tree, para.tags)
    _check_tree(parsed.inter.tree, [p.sentences[0].tag for p in doc.paragraphs])
    return doc, parsed


def cmd_parse(path, config: RunConfig, catalog: RelationCatalog) -> str:
    _, parsed = analyse(_read(path), catalog, config.one_sentence_per_line)
    lines = [format_bracket(r.tree) for r in parsed.paragraphs]
    lines.append(format_bracket(parsed.inter.tree))
    return "\n".join(lines) + "\n"


def cmd_summarize(path, config: RunConfig, catalog: RelationCatalog) -> str:
    doc, parsed = analyse(_read(path), catalog, config.one_sentence_per_line)
    result = reduce_document(parsed, config.ratio, catalog, budget=config.sentences, doc=doc, label=str(path))
    if len(result.kept) < 1:
        raise InvariantError("empty abstract")
    parts = []
    if config.mode in ("tree", "all"):
        trees = [format_penalty_tree(r.tree, a) for r, a in zip(parsed.paragraphs, result.penalties)]
        trees.append(format_penalty_tree(parsed.inter.tree, result.inter_penalties))
        parts.append("\n".join(trees))
    if config.mode in ("penalties", "all"):
        parts.append(render_annotated(result, doc))
    if config.mode in ("abstract", "all"):
        parts.append(result.rendered)
    return "\n\n".join(parts) + "\n"


def cmd_eval(manifest, config: RunConfig, catalog: RelationCatalog, char_ratio=False, fmt="both"):
    """Returns (report text, list of per-document error messages, exit code)."""
    entries = read_manifest(manifest)
    corpus, errors, code = [], [], EXIT_OK
    for path, gold in entries:
        try:
            doc = split_document(path.read_text(encoding="utf-8"), config.one_sentence_per_line)
            gold.check(doc)
        except OSError as exc:
            errors.append(f"{gold.doc_id}: {exc}")
            code = EXIT_IO
            continue
        except (IngestError, AnnotationError) as exc:
            errors.append(f"{gold.doc_id}: {exc}")
            code = code or EXIT_CONFIG
            continue
        corpus.append((doc, gold))
    report: CoverageReport = evaluate(corpus, config.ratio, catalog, char_ratio)
    out = []
    if fmt in ("table", "both"):
        out.append(report.table())
    if fmt in ("records", "both"):
        out.append("\n".join(report.records()))
    return "\n\n".join(out) + "\n", errors, code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", type=Path, help="relation catalog JSON (default: built-in English)")
    common.add_argument("--one-sentence-per-line", action="store_true", help="skip the sentence splitter")
    common.add_argument("--no-warnings", action="store_true", help="suppress warnings on stderr")

    target = argparse.ArgumentParser(add_help=False)
    group = target.add_mutually_exclusive_group()
    group.add_argument("--ratio", type=float, help="abstract length as a fraction of the text (default 0.3)")
    group.add_argument("--sentences", type=int, help="abstract length in sentences")

    ap = argparse.ArgumentParser(prog="rhetabs", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="print rhetorical trees in bracket notation")
    p.add_argument("inputs", nargs="+")

    p = sub.add_parser("summarize", parents=[common, target], help="generate an abstract")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--mode", choices=MODES, default="abstract")

    p = sub.add_parser("eval", parents=[common], help="key-sentence coverage over a corpus")
    p.add_argument("manifest")
    p.add_argument("--ratio", type=float, help="abstract length as a fraction of each text (default 0.3)")
    p.add_argument("--char-ratio", action="store_true", help="length ratio in characters, not sentences")
    p.add_argument("--format", choices=("table", "records", "both"), default="both")

    p = sub.add_parser("catalog", help="catalog utilities")
    csub = p.add_subparsers(dest="catalog_command", required=True)
    c = csub.add_parser("check", help="validate a catalog file")
    c.add_argument("path", type=Path)
    csub.add_parser("dump", help="print the built-in catalog")
    return ap


def _err(msg: str) -> None:
    print(f"rhetabs: {msg}", file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.ERROR if getattr(args, "no_warnings", False) else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        if args.command == "catalog":
            if args.catalog_command == "dump":
                sys.stdout.write(default_catalog().dumps())
                return EXIT_OK
            cat = load_catalog_file(args.path)
            print(
                f"ok: {len(cat.relations)} relations, {len(cat.lexicon)} lexicon entries, "
                f"{len(cat.preferences)} preference rules"
            )
            return EXIT_OK

        config = RunConfig(
            catalog_path=args.catalog,
            inputs=getattr(args, "inputs", [getattr(args, "manifest", None)]),
            ratio=getattr(args, "ratio", None),
            sentences=getattr(args, "sentences", None),
            mode=getattr(args, "mode", "abstract"),
            warnings=not args.no_warnings,
            one_sentence_per_line=args.one_sentence_per_line,
        )
        catalog = config.catalog()

        if args.command == "eval":
            text, errors, code = cmd_eval(args.manifest, config, catalog, args.char_ratio, args.format)
            sys.stdout.write(text)
            for e in errors:
                _err(e)
            return code

        run = cmd_parse if args.command == "parse" else cmd_summarize
        with ThreadPoolExecutor() as pool:
            outputs = list(pool.map(lambda path: run(path, config, catalog), config.inputs))
        sys.stdout.write("".join(outputs))
        return EXIT_OK
    except (OSError, IngestError) as exc:
        _err(str(exc))
        return EXIT_IO
    except (CatalogError, ManifestError, AnnotationError, TargetError, ParseError) as exc:
        _err(str(exc))
        return EXIT_CONFIG
    except InvariantError as exc:
        _err(f"internal invariant breached: {exc}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
