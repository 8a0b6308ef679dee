"""Rhetorical structure extraction and abstract generation from connective expressions."""

from rhetabs.catalog import (
    BOTH,
    LEFT,
    RIGHT,
    CatalogError,
    LexiconEntry,
    PreferenceRule,
    RelationCatalog,
    RelationTag,
    default_catalog,
    load_catalog,
    nucleus_of,
)
from rhetabs.ingest import (
    Document,
    Paragraph,
    SegmentConstraint,
    Sentence,
    detect_segments,
    split_document,
    tag_relations,
)
from rhetabs.tree import Leaf, Node, format_bracket, parse_bracket
from rhetabs.parser import (
    ParseResult,
    enumerate_candidates,
    parse,
    parse_document,
    score_tree,
)
from rhetabs.abstractor import (
    AbstractSelection,
    propagate_penalties,
    reduce,
    reduce_document,
    render_abstract,
)
from rhetabs.evaluation import CoverageReport, GoldAnnotation, evaluate

__version__ = "0.1.0"
