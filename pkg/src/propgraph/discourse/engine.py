"""Top-down clausal disembedding into a discourse tree."""

from __future__ import annotations

from typing import Optional, Sequence

from ..text.document import Document
from ..text.tree import ParseTree, reindex
from .nodes import (
    CONTEXT,
    CORE,
    ConstituencyType,
    DiscourseNode,
    Internal,
    Leaf,
    RhetoricalRelation,
    leaves,
)
from .pattern import Bindings
from .rules import MalformedMatch, RuleSet, TransformationRule, default_ruleset


class NonTermination(RuntimeError):
    pass


def init_tree(doc: Document) -> Internal:
    return Internal(
        ConstituencyType.COORDINATE,
        RhetoricalRelation.LIST,
        tuple((CORE, Leaf(s)) for s in doc.sentences),
    )


def match_first_rule(
    leaf: ParseTree, rules: Sequence[TransformationRule]
) -> Optional[tuple[TransformationRule, Bindings]]:
    for rule in rules:
        b = rule.match(leaf)
        if b is not None:
            return rule, b
    return None


def _first_index(tree: ParseTree) -> int:
    toks = tree.tokens()
    return toks[0].index if toks else -1


def apply_rule(
    rule: TransformationRule, bindings: Bindings, leaf: ParseTree
) -> tuple[list[tuple[str, ParseTree]], ConstituencyType, str]:
    ids = {id(n) for n in leaf.preorder()}
    for name, node in bindings.items():
        if id(node) not in ids:
            raise MalformedMatch(f"rule {rule.name}: binding {name!r} is not part of the sentence")

    built: list[tuple[str, ParseTree]] = []
    for tpl in rule.children:
        for tree in tpl.build(bindings):
            built.append((tpl.edge, tree))
    if len(built) < 2:
        raise MalformedMatch(f"rule {rule.name} produced {len(built)} sentence(s)")
    n = len(leaf)
    for _, tree in built:
        if not 0 < len(tree) < n:
            raise MalformedMatch(f"rule {rule.name} produced a sentence of {len(tree)} tokens from {n}")

    cue = rule.cue.extract(bindings)
    if cue in rule.core_cues:
        built = [(CORE, t) for _, t in built]
    # keep clause order; stable for children starting at the same token
    built.sort(key=lambda et: _first_index(et[1]))
    kind = ConstituencyType.SUBORDINATE if any(e == CONTEXT for e, _ in built) else ConstituencyType.COORDINATE
    if kind is ConstituencyType.SUBORDINATE and len(built) != 2:
        raise MalformedMatch(f"rule {rule.name}: subordination must have exactly two children")
    return [(e, reindex(t)) for e, t in built], kind, cue


def classify_relation(cue: str, environment: str, ruleset: Optional[RuleSet] = None) -> RhetoricalRelation:
    return (ruleset or default_ruleset()).classify(cue, environment)


def transform_clausal(root: DiscourseNode, ruleset: Optional[RuleSet] = None) -> DiscourseNode:
    rs = ruleset or default_ruleset()
    limit = max((len(lf.sentence) for lf in leaves(root)), default=0) + 1

    def expand(leaf: Leaf, depth: int) -> DiscourseNode:
        if depth > limit:
            raise NonTermination(f"clausal recursion deeper than {limit}")
        found = match_first_rule(leaf.sentence, rs.rules)
        if found is None:
            return leaf
        rule, b = found
        children, kind, cue = apply_rule(rule, b, leaf.sentence)
        relation = rs.classify(cue, rule.environment)
        new_children = []
        carried = leaf.contexts
        for edge, tree in children:
            ctx = ()
            if carried and edge == CORE:
                ctx, carried = carried, ()
            new_children.append((edge, expand(Leaf(tree, ctx), depth + 1)))
        return Internal(kind, relation, tuple(new_children))

    def walk(node: DiscourseNode) -> DiscourseNode:
        if isinstance(node, Leaf):
            return expand(node, 0)
        return Internal(node.kind, node.relation, tuple((e, walk(c)) for e, c in node.children))

    return walk(root)
