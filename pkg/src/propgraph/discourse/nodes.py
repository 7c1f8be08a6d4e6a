from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Literal, Union

from ..text.tree import ParseTree, yield_text

CORE = "core"
CONTEXT = "context"
EdgeLabel = Literal["core", "context"]


class RhetoricalRelation(str, enum.Enum):
    LIST = "LIST"
    DISJUNCTION = "DISJUNCTION"
    CONTRAST = "CONTRAST"
    CAUSE = "CAUSE"
    RESULT = "RESULT"
    CONDITION = "CONDITION"
    PURPOSE = "PURPOSE"
    TEMPORAL = "TEMPORAL"
    SPATIAL = "SPATIAL"
    ATTRIBUTION = "ATTRIBUTION"
    BACKGROUND = "BACKGROUND"
    ELABORATION = "ELABORATION"
    UNKNOWN = "UNKNOWN"

    @classmethod
    def parse(cls, name: str) -> "RhetoricalRelation":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown rhetorical relation {name!r}") from None

    def __str__(self):
        return self.value


class ConstituencyType(str, enum.Enum):
    COORDINATE = "Coordination"
    SUBORDINATE = "Subordination"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SimpleContext:
    phrase: str
    relation: RhetoricalRelation

    def __post_init__(self):
        if not self.phrase:
            raise ValueError("simple context phrase must be non-empty")


@dataclass(frozen=True)
class Leaf:
    sentence: ParseTree
    contexts: tuple[SimpleContext, ...] = ()


@dataclass(frozen=True)
class Internal:
    kind: ConstituencyType
    relation: RhetoricalRelation
    children: tuple[tuple[str, "DiscourseNode"], ...]


DiscourseNode = Union[Leaf, Internal]


class InvalidDiscourseTree(ValueError):
    pass


def leaves(node: DiscourseNode) -> Iterator[Leaf]:
    if isinstance(node, Leaf):
        yield node
        return
    for _, child in node.children:
        yield from leaves(child)


def leaves_with_layer(node: DiscourseNode, layer: int = 0) -> Iterator[tuple[Leaf, int]]:
    if isinstance(node, Leaf):
        yield node, layer
        return
    for edge, child in node.children:
        yield from leaves_with_layer(child, layer + (edge == CONTEXT))


def nuclei(node: DiscourseNode) -> Iterator[Leaf]:
    """Leaves reachable from ``node`` through core edges only."""
    if isinstance(node, Leaf):
        yield node
        return
    for edge, child in node.children:
        if edge == CORE:
            yield from nuclei(child)


def validate(node: DiscourseNode, *, root: bool = True) -> None:
    """Raise ``InvalidDiscourseTree`` if any structural invariant is broken.

    The document root is allowed fewer than two children."""
    if isinstance(node, Leaf):
        if len(node.sentence) < 1:
            raise InvalidDiscourseTree("leaf sentence without tokens")
        return
    edges = [e for e, _ in node.children]
    if any(e not in (CORE, CONTEXT) for e in edges):
        raise InvalidDiscourseTree(f"bad edge labels {edges}")
    if node.kind is ConstituencyType.COORDINATE:
        if CONTEXT in edges:
            raise InvalidDiscourseTree("coordination with a context edge")
        if len(edges) < 2 and not root:
            raise InvalidDiscourseTree("coordination with fewer than two children")
    else:
        if len(edges) != 2 or sorted(edges) != [CONTEXT, CORE]:
            raise InvalidDiscourseTree(f"subordination needs one core and one context child, got {edges}")
    for _, child in node.children:
        validate(child, root=False)


def to_canonical(node: DiscourseNode) -> str:
    """Deterministic one-line rendering used for equality and golden tests."""
    if isinstance(node, Leaf):
        ctx = "".join(f" [{c.relation.value}:{c.phrase}]" for c in node.contexts)
        return "{" + node.sentence.to_string() + ctx + "}"
    kids = " ".join(f"{edge}:{to_canonical(child)}" for edge, child in node.children)
    return f"<{node.kind.value}/{node.relation.value} {kids}>"


def render(node: DiscourseNode, indent: int = 0, edge: str = "") -> str:
    """Indented human-readable outline."""
    pad = "    " * indent
    prefix = f"{edge}: " if edge else ""
    if isinstance(node, Leaf):
        line = f"{pad}{prefix}{yield_text(node.sentence)}"
        for c in node.contexts:
            line += f"\n{pad}    ({c.relation.value}: {c.phrase})"
        return line
    head = f"{pad}{prefix}{node.kind.value} {node.relation.value}"
    return "\n".join([head] + [render(child, indent + 1, e) for e, child in node.children])
