"""Phrasal simplification of single-clause sentences.

Each clause loses its adjunct phrases (kept as classified simple contexts),
while appositives, participial modifiers and coordinations become new
sentences attached to the discourse tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .discourse.nodes import (
    CONTEXT,
    CORE,
    ConstituencyType,
    DiscourseNode,
    Internal,
    Leaf,
    RhetoricalRelation,
    SimpleContext,
)
from .discourse.rules import RuleSet, default_ruleset
from .text.tree import ParseTree, is_punct, reindex, remove_nodes, replace_node, yield_text

PP = "pp"
ADVP = "advp"
ADJP = "adjp"
LEAD_NP = "lead-np"
TEMPORAL_NP = "temporal-np"
PURPOSE = "purpose"
APPOSITIVE = "appositive"
PARTICIPIAL = "participial"
ENUMERATION = "np-enumeration"
VP_COORDINATION = "vp-coordination"

_YEAR = re.compile(r"^(1[0-9]|20)[0-9]{2}$")
_NEGATIONS = frozenset({"not", "n't", "never"})
_TEMPORAL_MODIFIERS = frozenset({"last", "next", "this", "every", "each", "early", "late"})
_COORD_RELATIONS = {"and": RhetoricalRelation.LIST, "or": RhetoricalRelation.DISJUNCTION}


class PhrasalNonTermination(RuntimeError):
    pass


@dataclass(frozen=True)
class Spawned:
    edge: str
    sentence: ParseTree
    relation: RhetoricalRelation
    group: int = 0


@dataclass(frozen=True)
class PhrasalResult:
    core: ParseTree
    simple_contexts: tuple[SimpleContext, ...] = ()
    spawned: tuple[Spawned, ...] = field(default=())

    @property
    def changed(self) -> bool:
        return bool(self.simple_contexts or self.spawned)


def _is_verb(node: ParseTree) -> bool:
    return node.token is not None and (node.label.startswith("VB") or node.label == "MD")


def _head_noun(np: ParseTree) -> Optional[ParseTree]:
    while np.children and np.children[0].label == "NP":
        np = np.children[0]
    heads = [n for n in np.leaves() if n.label.startswith(("NN", "CD", "PRP"))]
    return heads[-1] if heads else None


def _is_temporal_word(word: str, rs: RuleSet) -> bool:
    w = word.lower()
    return w in rs.lexicon("temporal_nouns") or bool(_YEAR.match(w))


def classify_phrase(phrase: ParseTree, category: str, ruleset: Optional[RuleSet] = None) -> RhetoricalRelation:
    rs = ruleset or default_ruleset()
    if category == PURPOSE:
        return RhetoricalRelation.PURPOSE
    if category in (APPOSITIVE, PARTICIPIAL):
        return RhetoricalRelation.ELABORATION
    if category == PP:
        words = phrase.leaves()
        if not words:
            return RhetoricalRelation.UNKNOWN
        prep = words[0].word.lower()
        np = next((c for c in phrase.children if c.label == "NP"), None)
        head = _head_noun(np) if np is not None else None
        if prep in rs.lexicon("exclusively_temporal_prepositions"):
            return RhetoricalRelation.TEMPORAL
        if prep in rs.lexicon("temporal_prepositions") and head is not None and _is_temporal_word(head.word, rs):
            return RhetoricalRelation.TEMPORAL
        if prep in rs.lexicon("locative_prepositions"):
            return RhetoricalRelation.SPATIAL
        return RhetoricalRelation.UNKNOWN
    if category in (LEAD_NP, TEMPORAL_NP, ADVP):
        if any(_is_temporal_word(w, rs) for w in phrase.words()):
            return RhetoricalRelation.TEMPORAL
        return RhetoricalRelation.UNKNOWN
    return RhetoricalRelation.UNKNOWN


# --- clause anatomy ----------------------------------------------------------


def _clause_parts(s: ParseTree) -> Optional[tuple[int, int]]:
    """Indices of (subject NP, main VP) among the children of clause ``s``."""
    if s.label != "S":
        return None
    vp_i = next((i for i, c in enumerate(s.children) if c.label == "VP"), None)
    if vp_i is None:
        return None
    subj_i = next((i for i in range(vp_i - 1, -1, -1) if s.children[i].label == "NP"), None)
    if subj_i is None:
        return None
    return subj_i, vp_i


def _is_aux(node: ParseTree) -> bool:
    if node.token is not None:
        return _is_verb(node) or node.label == "TO" or node.word.lower() in _NEGATIONS
    return node.label == "ADVP"


def _vp_chain(vp: ParseTree) -> list[ParseTree]:
    chain = [vp]
    while True:
        cur = chain[-1]
        if _is_coordinated(cur, "VP"):
            return chain
        nxt = None
        for c in cur.children:
            if c.label == "VP":
                nxt = c
                break
            if not _is_aux(c):
                break
        if nxt is None:
            return chain
        chain.append(nxt)


def _head_verb_index(vp: ParseTree) -> Optional[int]:
    return next((i for i, c in enumerate(vp.children) if c.token is not None and c.label.startswith("VB")), None)


def _is_coordinated(node: ParseTree, label: str) -> bool:
    kids = node.children
    conj = [c for c in kids if c.label == label]
    ccs = [c for c in kids if c.label == "CC"]
    return (
        len(conj) >= 2
        and len(ccs) >= 1
        and all(c.label in (label, "CC", ",", "DT") for c in kids)
        and all(c.word.lower() in _COORD_RELATIONS for c in ccs)
    )


def _flat_np_groups(np: ParseTree) -> Optional[list[tuple[ParseTree, ...]]]:
    if any(c.token is None for c in np.children):
        return None
    ccs = [c for c in np.children if c.label == "CC"]
    if not ccs or any(c.word.lower() not in _COORD_RELATIONS for c in ccs):
        return None
    groups: list[list[ParseTree]] = [[]]
    for c in np.children:
        if c.label in ("CC", ","):
            groups.append([])
        else:
            groups[-1].append(c)
    groups = [g for g in groups if g]
    if len(groups) < 2 or any(not g[-1].label.startswith(("NN", "PRP", "CD")) for g in groups):
        return None
    return [tuple(g) for g in groups]


def _enumeration(np: ParseTree) -> Optional[tuple[list[ParseTree], RhetoricalRelation]]:
    cc = next((c for c in np.children if c.label == "CC"), None)
    if cc is None:
        return None
    relation = _COORD_RELATIONS.get(cc.word.lower()) if cc.token is not None else None
    if relation is None:
        return None
    if _is_coordinated(np, "NP"):
        return [c for c in np.children if c.label == "NP"], relation
    groups = _flat_np_groups(np)
    if groups:
        return [ParseTree("NP", g) for g in groups], relation
    return None


def _appositive(np: ParseTree) -> Optional[tuple[ParseTree, ParseTree]]:
    labels = [c.label for c in np.children]
    if labels not in (["NP", ",", "NP"], ["NP", ",", "NP", ","]):
        return None
    head, appos = np.children[0], np.children[2]
    if _enumeration(appos) or _enumeration(head):
        return None
    if all(n.label.startswith("NNP") for n in head.leaves()) and all(n.label.startswith("NNP") for n in appos.leaves()):
        return None
    return head, appos


def _participial(np: ParseTree) -> Optional[tuple[ParseTree, ParseTree]]:
    kids = [c for c in np.children if c.label != ","]
    if len(kids) != 2 or kids[0].label != "NP" or kids[1].label != "VP":
        return None
    verb_i = _head_verb_index(kids[1])
    if verb_i != 0 or kids[1].children[0].label not in ("VBN", "VBG"):
        return None
    return kids[0], kids[1]


def _is_plural(np: ParseTree) -> bool:
    if any(c.label == "CC" for c in np.children):
        return True
    head = _head_noun(np)
    return head is not None and (head.label in ("NNS", "NNPS") or head.word.lower() in ("we", "they", "you"))


def _copula_sentence(subject: ParseTree, predicate: ParseTree, past: bool = False) -> ParseTree:
    plural = _is_plural(subject)
    if past:
        verb = ParseTree.leaf("VBD", "were" if plural else "was")
    else:
        verb = ParseTree.leaf("VBP", "are") if plural else ParseTree.leaf("VBZ", "is")
    vp = ParseTree("VP", (verb, predicate))
    return reindex(ParseTree("S", (subject, vp)))


def _participle_sentence(subject: ParseTree, vp: ParseTree) -> ParseTree:
    return _copula_sentence(subject, vp, past=vp.children[0].label == "VBN")


def _is_purpose_clause(node: ParseTree) -> bool:
    if node.label == "SBAR":
        words = [w.lower() for w in node.words()[:3]]
        return words[:3] == ["in", "order", "to"] or words[:3] == ["so", "as", "to"]
    if node.label == "S" and node.children and node.children[0].label == "VP":
        first = node.children[0].children[0] if node.children[0].children else None
        return first is not None and first.label == "TO" and len(node.children) == 1
    return False


def _leading_participle(node: ParseTree) -> bool:
    return (
        node.label == "S"
        and len(node.children) == 1
        and node.children[0].label == "VP"
        and bool(node.children[0].children)
        and node.children[0].children[0].label in ("VBN", "VBG")
    )


# --- one simplification step ---------------------------------------------------


class _Step:
    """Outcome of a single transformation on a clause."""

    def __init__(self, core: ParseTree, contexts=(), spawned=()):
        self.core = core
        self.contexts = list(contexts)
        self.spawned = list(spawned)


def _split_coordination(s: ParseTree, rs: RuleSet) -> Optional[_Step]:
    parts = _clause_parts(s)
    if parts is None:
        return None
    subj_i, vp_i = parts
    targets = [s.children[subj_i]]
    chain = _vp_chain(s.children[vp_i])
    inner = chain[-1]
    verb_i = _head_verb_index(inner)
    if verb_i is not None:
        targets += [c for c in inner.children[verb_i + 1 :] if c.label == "NP"][:1]
    for np in targets:
        found = _enumeration(np)
        if found:
            conjuncts, relation = found
            versions = [reindex(replace_node(s, np, [c])) for c in conjuncts]
            return _Step(versions[0], spawned=[(CORE, v, relation) for v in versions[1:]])
    if _is_coordinated(inner, "VP"):
        cc = next(c for c in inner.children if c.label == "CC")
        relation = _COORD_RELATIONS[cc.word.lower()]
        conjuncts = [c for c in inner.children if c.label == "VP"]
        versions = [reindex(replace_node(s, inner, [c])) for c in conjuncts]
        return _Step(versions[0], spawned=[(CORE, v, relation) for v in versions[1:]])
    return None


def _split_modifiers(s: ParseTree, rs: RuleSet) -> Optional[_Step]:
    parts = _clause_parts(s)
    if parts is None:
        return None
    for np in s.preorder():
        if np.label != "NP":
            continue
        found = _appositive(np)
        if found:
            head, appos = found
            core = reindex(replace_node(s, np, [head]))
            ctx = _copula_sentence(head, appos)
            return _Step(core, spawned=[(CONTEXT, ctx, classify_phrase(appos, APPOSITIVE, rs))])
        found = _participial(np)
        if found:
            head, vp = found
            core = reindex(replace_node(s, np, [head]))
            ctx = _participle_sentence(head, vp)
            return _Step(core, spawned=[(CONTEXT, ctx, classify_phrase(vp, PARTICIPIAL, rs))])
    subj_i, _ = parts
    for i, c in enumerate(s.children[:subj_i]):
        if _leading_participle(c):
            drop = [c] + _adjacent_commas(s, i)
            core = reindex(remove_nodes(s, drop))
            vp = c.children[0]
            first = vp.children[0]
            if i == 0 and first.word[:1].isupper():
                vp = replace_node(vp, first, [ParseTree.leaf(first.label, first.word.lower())])
            ctx = _participle_sentence(s.children[subj_i], vp)
            return _Step(core, spawned=[(CONTEXT, ctx, classify_phrase(c, PARTICIPIAL, rs))])
    return None


def _adjacent_commas(s: ParseTree, i: int) -> list[ParseTree]:
    kids = s.children
    out = []
    if i + 1 < len(kids) and kids[i + 1].label == ",":
        out.append(kids[i + 1])
    elif i > 0 and kids[i - 1].label == ",":
        out.append(kids[i - 1])
    return out


def _clause_adjunct(node: ParseTree, rs: RuleSet) -> Optional[SimpleContext]:
    if node.label == "PP":
        cat = PP
    elif node.label == "ADVP":
        if any(w.lower() in _NEGATIONS for w in node.words()):
            return None
        cat = ADVP
    elif node.label in ("NP", "NP-TMP"):
        cat = LEAD_NP
    elif node.label == "ADJP":
        cat = ADJP
    elif _is_purpose_clause(node):
        cat = PURPOSE
    else:
        return None
    return SimpleContext(yield_text(node), classify_phrase(node, cat, rs))


def _extract_adjuncts(s: ParseTree, rs: RuleSet) -> Optional[_Step]:
    parts = _clause_parts(s)
    if parts is None:
        return None
    subj_i, vp_i = parts
    drop: list[ParseTree] = []
    contexts: list[SimpleContext] = []

    # clause-level material before the subject or after the predicate
    for i, c in enumerate(s.children):
        if i == subj_i or i == vp_i or (subj_i < i < vp_i and c.label != "ADVP") or is_punct(c.label):
            continue
        if i > vp_i and c.label == "NP":
            continue
        ctx = _clause_adjunct(c, rs)
        if ctx is not None:
            drop.append(c)
            drop.extend(_adjacent_commas(s, i))
            contexts.append(ctx)

    chain = _vp_chain(s.children[vp_i])
    copular = False
    for vp in chain:
        verb_i = _head_verb_index(vp)
        if vp is chain[-1] and verb_i is not None:
            copular = vp.children[verb_i].word.lower() in rs.lexicon("copulas")
        after_complement = False
        for j, c in enumerate(vp.children):
            if c.label == "ADVP":
                ctx = _clause_adjunct(c, rs)
                if ctx is not None:
                    drop.append(c)
                    contexts.append(ctx)
                continue
            if vp is not chain[-1] or verb_i is None or j <= verb_i:
                continue
            if c.label == "PP":
                ctx = _vp_pp(c, after_complement, copular, rs)
                if ctx is not None:
                    drop.append(c)
                    contexts.append(ctx)
                    continue
            elif c.label == "NP" and _is_temporal_np(c, rs):
                drop.append(c)
                contexts.append(SimpleContext(yield_text(c), RhetoricalRelation.TEMPORAL))
                continue
            elif _is_purpose_clause(c) and (after_complement or c.label == "SBAR"):
                drop.append(c)
                contexts.append(SimpleContext(yield_text(c), RhetoricalRelation.PURPOSE))
                continue
            if not is_punct(c.label):
                after_complement = True

    if not drop:
        return None
    core = remove_nodes(s, drop)
    if core is None or _clause_parts(core) is None:
        return None
    return _Step(reindex(core), contexts=contexts)


def _vp_pp(pp: ParseTree, after_complement: bool, copular: bool, rs: RuleSet) -> Optional[SimpleContext]:
    words = pp.words()
    if not words or words[0].lower() in rs.lexicon("argument_prepositions"):
        return None
    relation = classify_phrase(pp, PP, rs)
    if not after_complement:
        if copular:
            return None
        np = next((c for c in pp.children if c.label == "NP"), None)
        head = _head_noun(np) if np is not None else None
        if relation is RhetoricalRelation.UNKNOWN or head is None or head.label.startswith("PRP"):
            return None
    return SimpleContext(yield_text(pp), relation)


def _is_temporal_np(np: ParseTree, rs: RuleSet) -> bool:
    words = [w.lower() for w in np.words()]
    return bool(words) and all(w in _TEMPORAL_MODIFIERS or _is_temporal_word(w, rs) for w in words) and any(
        _is_temporal_word(w, rs) for w in words
    )


_STEPS = (_split_coordination, _split_modifiers, _extract_adjuncts)


def disembed_phrases(leaf: ParseTree, ruleset: Optional[RuleSet] = None) -> PhrasalResult:
    rs = ruleset or default_ruleset()
    core = leaf
    contexts: list[SimpleContext] = []
    spawned: list[Spawned] = []
    group = 0
    limit = len(leaf) + 1
    for _ in range(limit):
        for step_fn in _STEPS:
            step = step_fn(core, rs)
            if step is not None:
                break
        else:
            return PhrasalResult(core, tuple(contexts), tuple(spawned))
        core = step.core
        contexts.extend(step.contexts)
        for edge, sent, rel in step.spawned:
            spawned.append(Spawned(edge, sent, rel, group))
        group += 1
    raise PhrasalNonTermination(f"phrasal simplification did not settle within {limit} steps")


def expand_leaf(leaf: Leaf, ruleset: Optional[RuleSet] = None, _depth: int = 0) -> DiscourseNode:
    """Replace ``leaf`` by the discourse subtree its phrasal simplification yields."""
    rs = ruleset or default_ruleset()
    if _depth > len(leaf.sentence) + 8:
        raise PhrasalNonTermination("spawned sentences kept growing")
    res = disembed_phrases(leaf.sentence, rs)
    if not res.changed:
        return leaf
    node: DiscourseNode = Leaf(res.core, leaf.contexts + res.simple_contexts)
    for g in sorted({s.group for s in res.spawned}, reverse=True):
        items = [s for s in res.spawned if s.group == g]
        subtrees = [expand_leaf(Leaf(s.sentence), rs, _depth + 1) for s in items]
        if items[0].edge == CONTEXT:
            for s, sub in zip(items, subtrees):
                node = Internal(ConstituencyType.SUBORDINATE, s.relation, ((CORE, node), (CONTEXT, sub)))
        else:
            node = Internal(
                ConstituencyType.COORDINATE,
                items[0].relation,
                ((CORE, node),) + tuple((CORE, sub) for sub in subtrees),
            )
    return node


def transform_phrasal(root: DiscourseNode, ruleset: Optional[RuleSet] = None) -> DiscourseNode:
    rs = ruleset or default_ruleset()
    if isinstance(root, Leaf):
        return expand_leaf(root, rs)
    return Internal(root.kind, root.relation, tuple((e, transform_phrasal(c, rs)) for e, c in root.children))
