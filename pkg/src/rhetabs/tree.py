"""Binary rhetorical trees and their bracket notation.

Grammar (exact, single spaces)::

    tree := index | "[" tree " <" TAG "> " tree "]"
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union


class BracketSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Leaf:
    index: int

    @property
    def first(self) -> int:
        return self.index

    @property
    def last(self) -> int:
        return self.index


@dataclass(frozen=True)
class Node:
    relation: str
    left: "Tree"
    right: "Tree"

    @property
    def first(self) -> int:
        return self.left.first

    @property
    def last(self) -> int:
        return self.right.last


Tree = Union[Leaf, Node]


def root_relation(tree: Tree):
    return tree.relation if isinstance(tree, Node) else None


def leaves(tree: Tree) -> list[int]:
    out = []
    stack = [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, Leaf):
            out.append(t.index)
        else:
            stack.append(t.right)
            stack.append(t.left)
    return out


def internal_nodes(tree: Tree) -> Iterator[Node]:
    stack = [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, Node):
            yield t
            stack.append(t.right)
            stack.append(t.left)


def spans(tree: Tree) -> set[tuple[int, int]]:
    return {(n.first, n.last) for n in internal_nodes(tree)}


def format_bracket(tree: Tree) -> str:
    if isinstance(tree, Leaf):
        return str(tree.index)
    return f"[{format_bracket(tree.left)} <{tree.relation}> {format_bracket(tree.right)}]"


_TOKEN = re.compile(r"\[|\]|<[^<>\s]+>|\d+| ")


def parse_bracket(text: str) -> Tree:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise BracketSyntaxError(f"unexpected character {text[pos]!r} at {pos}")
        tokens.append(m.group())
        pos = m.end()
    i = 0

    def expect(tok):
        nonlocal i
        if i >= len(tokens) or tokens[i] != tok:
            got = tokens[i] if i < len(tokens) else "end of input"
            raise BracketSyntaxError(f"expected {tok!r}, got {got!r}")
        i += 1

    def tree() -> Tree:
        nonlocal i
        if i >= len(tokens):
            raise BracketSyntaxError("unexpected end of input")
        tok = tokens[i]
        if tok.isdigit():
            i += 1
            return Leaf(int(tok))
        expect("[")
        left = tree()
        expect(" ")
        if i >= len(tokens) or not tokens[i].startswith("<"):
            raise BracketSyntaxError("expected relation tag")
        rel = tokens[i][1:-1]
        i += 1
        expect(" ")
        right = tree()
        expect("]")
        return Node(rel, left, right)

    result = tree()
    if i != len(tokens):
        raise BracketSyntaxError(f"trailing input after position {i}")
    return result
