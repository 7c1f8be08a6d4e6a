"""Relational tuples, propositions and the per-document proposition graph."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .discourse.nodes import (
    ConstituencyType,
    DiscourseNode,
    Internal,
    Leaf,
    RhetoricalRelation,
    SimpleContext,
    leaves,
    leaves_with_layer,
    nuclei,
)
from .text.tree import PTB_ESCAPES, ParseTree, is_punct

_NEGATIONS = frozenset({"not", "n't", "never"})
_PROPER = ("NNP", "NNPS")


class ExtractionError(ValueError):
    pass


class NoVerbFound(ExtractionError):
    pass


class NoSubjectFound(ExtractionError):
    pass


class DanglingLink(RuntimeError):
    pass


@dataclass(frozen=True)
class RelationalTuple:
    rel: str
    arg_subj: str
    arg_obj: str = ""

    def __post_init__(self):
        if not self.rel or not self.arg_subj:
            raise ValueError("rel and arg_subj must be non-empty")

    def text(self) -> str:
        return " ".join(p for p in (self.arg_subj, self.rel, self.arg_obj) if p)


@dataclass(frozen=True)
class LinkedContext:
    target_id: int
    relation: RhetoricalRelation


@dataclass(frozen=True)
class Proposition:
    id: int
    cl: int
    t: RelationalTuple
    simple: tuple[SimpleContext, ...] = ()
    linked: tuple[LinkedContext, ...] = ()


@dataclass(frozen=True)
class SentenceGroup:
    text: str
    propositions: tuple[Proposition, ...] = ()


@dataclass(frozen=True)
class PropositionGraph:
    sentences: tuple[SentenceGroup, ...] = ()

    def propositions(self) -> Iterator[Proposition]:
        for s in self.sentences:
            yield from s.propositions

    def get(self, pid: int) -> Proposition:
        for p in self.propositions():
            if p.id == pid:
                return p
        raise KeyError(pid)

    def __len__(self) -> int:
        return sum(len(s.propositions) for s in self.sentences)

    def validate(self) -> None:
        props = list(self.propositions())
        ids = [p.id for p in props]
        if ids != list(range(1, len(ids) + 1)):
            raise DanglingLink(f"proposition ids are not 1..{len(ids)}: {ids}")
        known = set(ids)
        for p in props:
            for link in p.linked:
                if link.target_id not in known:
                    raise DanglingLink(f"#{p.id} links to unknown #{link.target_id}")
                if link.target_id == p.id:
                    raise DanglingLink(f"#{p.id} links to itself")


# --- tuple extraction ---------------------------------------------------------


def _text(nodes: Sequence[ParseTree]) -> str:
    words = [w for n in nodes for w in n.words()]
    return " ".join(PTB_ESCAPES.get(w, w) for w in words)


def _is_aux(node: ParseTree) -> bool:
    if node.token is not None:
        return node.label.startswith("VB") or node.label in ("MD", "TO") or node.word.lower() in _NEGATIONS
    return node.label == "ADVP"


def _verb_group(vp: ParseTree) -> tuple[list[ParseTree], list[ParseTree]]:
    rel: list[ParseTree] = []
    node = vp
    while True:
        kids = list(node.children)
        i = 0
        while i < len(kids) and _is_aux(kids[i]):
            i += 1
        collected, rest = kids[:i], kids[i:]
        if rest and rest[0].label == "VP":
            rel.extend(collected)
            node = rest[0]
            continue
        # an adverb can sit inside the verb group but not close it
        while collected and collected[-1].token is None:
            rest.insert(0, collected.pop())
        rel.extend(collected)
        while rest and rest[0].label == "PRT":
            rel.append(rest.pop(0))
        return rel, [n for n in rest if not is_punct(n.label)]


def _clause(leaf: ParseTree) -> ParseTree:
    node = leaf
    while True:
        content = [c for c in node.children if not is_punct(c.label)]
        if len(content) == 1 and content[0].label == "S" and node.label in ("S", "ROOT"):
            node = content[0]
        else:
            return node


def _case_subject(subj: list[ParseTree], leaf: ParseTree) -> str:
    first = subj[0].leaves()[0] if subj and subj[0].leaves() else None
    text = _text(subj)
    if first is None or not leaf.leaves() or leaf.leaves()[0] is not first:
        return text
    w = first.word
    if first.label in _PROPER or w == "I" or len(w) < 1 or not w[0].isupper() or (len(w) > 1 and not w[1:].islower()):
        return text
    return w.lower() + text[len(w) :]


def extract_tuple(leaf: ParseTree) -> RelationalTuple:
    """Default relation extractor: subject NP, verb group, remaining complement."""
    s = _clause(leaf)
    vp_i = next((i for i, c in enumerate(s.children) if c.label == "VP"), None)
    if s.label != "S" or vp_i is None:
        raise NoVerbFound(f"no clause predicate in {s.to_string()}")
    subj_i = next((i for i in range(vp_i - 1, -1, -1) if s.children[i].label == "NP"), None)
    rel, obj = _verb_group(s.children[vp_i])
    if not any(n.token is not None and (n.label.startswith("VB") or n.label == "MD") for n in rel):
        raise NoVerbFound(f"no verb in {s.to_string()}")
    if subj_i is None:
        raise NoSubjectFound(f"no subject in {s.to_string()}")
    return RelationalTuple(_text(rel), _case_subject([s.children[subj_i]], leaf), _text(obj))


# --- layers and links ------------------------------------------------------------


def assign_layers(tree: DiscourseNode) -> list[tuple[Leaf, int]]:
    """Leaves in order with their context layer (context edges from the root)."""
    return list(leaves_with_layer(tree))


def link_propositions(
    tree: DiscourseNode,
    tuples: Sequence[Optional[RelationalTuple]],
    sentence_texts: Optional[Sequence[str]] = None,
    *,
    document_root: bool = True,
) -> PropositionGraph:
    """Assemble the graph from a transformed tree and one tuple (or None) per leaf.

    The children of a document root are the source sentences; the root
    itself creates no links."""
    layered = assign_layers(tree)
    if len(tuples) != len(layered):
        raise ValueError(f"{len(tuples)} tuples for {len(layered)} leaves")

    ids: dict[int, int] = {}
    counter = itertools.count(1)
    for (leaf, _), t in zip(layered, tuples):
        if t is not None:
            ids[id(leaf)] = next(counter)

    links: dict[int, set[tuple[int, RhetoricalRelation]]] = {pid: set() for pid in ids.values()}

    def pids(node: DiscourseNode) -> list[int]:
        return [ids[id(lf)] for lf in nuclei(node) if id(lf) in ids]

    def visit(node: DiscourseNode, is_root: bool) -> None:
        if isinstance(node, Leaf):
            return
        if not (is_root and document_root):
            if node.kind is ConstituencyType.SUBORDINATE:
                core = [pids(c) for e, c in node.children if e == "core"][0]
                ctx = [pids(c) for e, c in node.children if e == "context"][0]
                for p in core:
                    for q in ctx:
                        links[p].add((q, node.relation))
            else:
                groups = [pids(c) for _, c in node.children]
                for a, b in itertools.combinations(range(len(groups)), 2):
                    for p in groups[a]:
                        for q in groups[b]:
                            links[p].add((q, node.relation))
                            links[q].add((p, node.relation))
        for _, c in node.children:
            visit(c, False)

    visit(tree, True)

    def proposition(leaf: Leaf, cl: int, t: RelationalTuple) -> Proposition:
        pid = ids[id(leaf)]
        linked = tuple(
            LinkedContext(q, r) for q, r in sorted(links[pid], key=lambda x: (x[0], x[1].value)) if q != pid
        )
        return Proposition(pid, cl, t, leaf.contexts, linked)

    if document_root and isinstance(tree, Internal):
        sentence_nodes = [c for _, c in tree.children]
    else:
        sentence_nodes = [tree]
    if sentence_texts is None:
        sentence_texts = [_sentence_text(n) for n in sentence_nodes]
    if len(sentence_texts) != len(sentence_nodes):
        raise ValueError("one sentence text per sentence node is required")

    by_leaf = {id(leaf): (cl, t) for (leaf, cl), t in zip(layered, tuples) if t is not None}
    groups = []
    for text, node in zip(sentence_texts, sentence_nodes):
        props = []
        for leaf in leaves(node):
            if id(leaf) in by_leaf:
                cl, t = by_leaf[id(leaf)]
                props.append(proposition(leaf, cl, t))
        groups.append(SentenceGroup(text, tuple(props)))
    graph = PropositionGraph(tuple(groups))
    graph.validate()
    return graph


def _sentence_text(node: DiscourseNode) -> str:
    return " ".join(_text([lf.sentence]) for lf in leaves(node))


@dataclass
class Diagnostics:
    skipped: list[tuple[int, str]] = field(default_factory=list)

    def add(self, sentence_index: int, message: str) -> None:
        self.skipped.append((sentence_index, message))
