"""Relation tags, nucleus classes, the connective lexicon and preference rules.

A catalog is stored as JSON with the sections ``relations``, ``lexicon`` and
``preferences`` plus an optional ``segments`` block; see ``docs/catalog.md``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

RIGHT = "RightNucleus"
LEFT = "LeftNucleus"
BOTH = "BothNucleus"
NUCLEUS_CLASSES = (RIGHT, LEFT, BOTH)

WILDCARD = "*"
POSITIONS = ("left", "right")
LEXICON_POSITIONS = ("start", "anywhere")

DEFAULT_TAG = "EX"

# (parent relation, child side, child root relation) -> penalty
RuleTable = Mapping[tuple[str, str, str], int]


class CatalogError(ValueError):
    pass


class CatalogParseError(CatalogError):
    """The catalog text is not well-formed."""


class CatalogSemanticError(CatalogError):
    """The catalog parses but is inconsistent (unknown tag, duplicates, ...)."""


@dataclass(frozen=True)
class RelationTag:
    id: str
    name: str
    nucleus: str


@dataclass(frozen=True)
class LexiconEntry:
    pattern: str
    tag: str
    priority: int = 0
    # "start": connective at sentence start; "anywhere": sentence-internal
    # (predicate-like) expression matched as a whole-word phrase.
    position: str = "start"

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(self.pattern.lower().split())


@dataclass(frozen=True)
class PreferenceRule:
    """Penalize a node whose relation matches ``parent`` when its child on
    ``child_position`` is an internal node whose relation matches ``child_root``.

    Selectors are a tag id, ``*``, or a nucleus class name.
    """

    parent: str
    child_position: str
    child_root: str
    penalty: int = 1


@dataclass(frozen=True)
class SegmentMarkers:
    enumerators: tuple[str, ...] = (
        "first", "second", "third", "fourth", "fifth",
        "sixth", "seventh", "eighth", "ninth", "tenth",
    )
    concession_open: tuple[str, ...] = ("SP",)
    concession_close: tuple[str, ...] = ("NG",)


@dataclass(frozen=True)
class RelationCatalog:
    relations: tuple[RelationTag, ...]
    lexicon: tuple[LexiconEntry, ...] = ()
    preferences: tuple[PreferenceRule, ...] = ()
    segments: SegmentMarkers = field(default_factory=SegmentMarkers)

    def __post_init__(self):
        _validate(self)

    @property
    def tags(self) -> dict[str, RelationTag]:
        return {r.id: r for r in self.relations}

    def nucleus_of(self, tag: str) -> str:
        for r in self.relations:
            if r.id == tag:
                return r.nucleus
        raise KeyError(f"unknown relation tag {tag!r}")

    def selector_matches(self, selector: str, tag: str) -> bool:
        if selector == WILDCARD:
            return True
        if selector in NUCLEUS_CLASSES:
            return self.nucleus_of(tag) == selector
        return selector == tag

    def rule_table(self, rules: Iterable[PreferenceRule] | None = None) -> dict:
        """Expand selectors into a concrete penalty lookup over this catalog's tags."""
        rules = self.preferences if rules is None else tuple(rules)
        ids = [r.id for r in self.relations]
        table: dict[tuple[str, str, str], int] = {}
        for rule in rules:
            if rule.penalty == 0:
                continue
            for parent in ids:
                if not self.selector_matches(rule.parent, parent):
                    continue
                for child in ids:
                    if self.selector_matches(rule.child_root, child):
                        key = (parent, rule.child_position, child)
                        table[key] = table.get(key, 0) + rule.penalty
        return table

    def to_dict(self) -> dict:
        return {
            "relations": [
                {"id": r.id, "name": r.name, "nucleus": r.nucleus} for r in self.relations
            ],
            "lexicon": [
                {
                    "pattern": e.pattern,
                    "tag": e.tag,
                    "priority": e.priority,
                    "position": e.position,
                }
                for e in self.lexicon
            ],
            "preferences": [
                {
                    "parent": p.parent,
                    "child_position": p.child_position,
                    "child_root": p.child_root,
                    "penalty": p.penalty,
                }
                for p in self.preferences
            ],
            "segments": {
                "enumerators": list(self.segments.enumerators),
                "concession_open": list(self.segments.concession_open),
                "concession_close": list(self.segments.concession_close),
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def _validate(cat: RelationCatalog) -> None:
    seen = set()
    for r in cat.relations:
        if not r.id or r.id == WILDCARD or r.id in NUCLEUS_CLASSES:
            raise CatalogSemanticError(f"invalid relation id {r.id!r}")
        if r.id in seen:
            raise CatalogSemanticError(f"duplicate relation id {r.id!r}")
        if r.nucleus not in NUCLEUS_CLASSES:
            raise CatalogSemanticError(
                f"relation {r.id!r}: nucleus must be one of {NUCLEUS_CLASSES}, got {r.nucleus!r}"
            )
        seen.add(r.id)
    if DEFAULT_TAG not in seen:
        raise CatalogSemanticError(f"catalog must declare the default relation {DEFAULT_TAG!r}")

    for e in cat.lexicon:
        if not e.pattern.strip():
            raise CatalogSemanticError("lexicon entry with empty pattern")
        if e.tag not in seen:
            raise CatalogSemanticError(f"lexicon entry {e.pattern!r} refers to unknown tag {e.tag!r}")
        if e.position not in LEXICON_POSITIONS:
            raise CatalogSemanticError(f"lexicon entry {e.pattern!r}: bad position {e.position!r}")

    selectors = seen | {WILDCARD, *NUCLEUS_CLASSES}
    for p in cat.preferences:
        for sel in (p.parent, p.child_root):
            if sel not in selectors:
                raise CatalogSemanticError(f"preference rule refers to unknown tag {sel!r}")
        if p.child_position not in POSITIONS:
            raise CatalogSemanticError(f"bad child_position {p.child_position!r}")
        if p.penalty < 0:
            raise CatalogSemanticError("preference penalty must be non-negative")


def _expect(obj, kind, where):
    if not isinstance(obj, kind):
        raise CatalogParseError(f"{where}: expected {kind.__name__}, got {type(obj).__name__}")
    return obj


def _record(obj, where, required, optional=()):
    _expect(obj, dict, where)
    missing = [k for k in required if k not in obj]
    if missing:
        raise CatalogParseError(f"{where}: missing field(s) {', '.join(missing)}")
    extra = set(obj) - set(required) - set(optional)
    if extra:
        raise CatalogParseError(f"{where}: unexpected field(s) {', '.join(sorted(extra))}")
    return obj


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise CatalogParseError(f"{where}: expected integer, got {value!r}")
    return value


def _str(value, where):
    return _expect(value, str, where)


def catalog_from_dict(data: dict) -> RelationCatalog:
    _record(data, "catalog", ["relations"], ["lexicon", "preferences", "segments"])
    relations = []
    for i, r in enumerate(_expect(data["relations"], list, "relations")):
        w = f"relations[{i}]"
        _record(r, w, ["id", "nucleus"], ["name"])
        relations.append(
            RelationTag(_str(r["id"], w), _str(r.get("name", r["id"]), w), _str(r["nucleus"], w))
        )
    lexicon = []
    for i, e in enumerate(_expect(data.get("lexicon", []), list, "lexicon")):
        w = f"lexicon[{i}]"
        _record(e, w, ["pattern", "tag"], ["priority", "position"])
        lexicon.append(
            LexiconEntry(
                _str(e["pattern"], w),
                _str(e["tag"], w),
                _int(e.get("priority", 0), w),
                _str(e.get("position", "start"), w),
            )
        )
    prefs = []
    for i, p in enumerate(_expect(data.get("preferences", []), list, "preferences")):
        w = f"preferences[{i}]"
        _record(p, w, ["parent", "child_position", "child_root"], ["penalty"])
        prefs.append(
            PreferenceRule(
                _str(p["parent"], w),
                _str(p["child_position"], w),
                _str(p["child_root"], w),
                _int(p.get("penalty", 1), w),
            )
        )
    declared = {r.id for r in relations}
    base = SegmentMarkers()
    seg = SegmentMarkers(
        base.enumerators,
        tuple(t for t in base.concession_open if t in declared),
        tuple(t for t in base.concession_close if t in declared),
    )
    if "segments" in data:
        s = _record(
            data["segments"], "segments", [],
            ["enumerators", "concession_open", "concession_close"],
        )
        kw = {}
        for key in ("enumerators", "concession_open", "concession_close"):
            if key in s:
                items = _expect(s[key], list, f"segments.{key}")
                kw[key] = tuple(_str(x, f"segments.{key}") for x in items)
        if "enumerators" in kw:
            kw["enumerators"] = tuple(x.lower() for x in kw["enumerators"])
        for key in ("concession_open", "concession_close"):
            for tag in kw.get(key, ()):
                if tag not in declared:
                    raise CatalogSemanticError(f"segments.{key} refers to unknown tag {tag!r}")
        seg = replace(seg, **kw)
    return RelationCatalog(tuple(relations), tuple(lexicon), tuple(prefs), seg)


def load_catalog(source: str) -> RelationCatalog:
    """Build a catalog from its JSON text.

    Raises CatalogParseError for malformed text and CatalogSemanticError for
    referential problems.
    """
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise CatalogParseError(f"invalid JSON: {exc}") from exc
    return catalog_from_dict(data)


def load_catalog_file(path: str | Path) -> RelationCatalog:
    return load_catalog(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def default_catalog() -> RelationCatalog:
    text = resources.files("rhetabs").joinpath("data/default_catalog.json").read_text("utf-8")
    return load_catalog(text)


def nucleus_of(catalog: RelationCatalog, tag: str) -> str:
    return catalog.nucleus_of(tag)
