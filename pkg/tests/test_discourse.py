import json

import pytest

from propgraph.discourse import (
    CONTEXT,
    CORE,
    ConstituencyType,
    Internal,
    InvalidDiscourseTree,
    Leaf,
    MalformedMatch,
    RhetoricalRelation,
    RuleSetError,
    apply_rule,
    classify_relation,
    default_ruleset,
    init_tree,
    load_ruleset,
    match_first_rule,
    transform_clausal,
    validate,
)
from propgraph.discourse.nodes import leaves, leaves_with_layer, nuclei, render, to_canonical
from propgraph.discourse.pattern import PatternSyntaxError, TreePattern
from propgraph.discourse.rules import build_ruleset
from propgraph.text import Document, parse_ptb, yield_text

R = RhetoricalRelation
RS = default_ruleset()

BECAUSE = "(S (NP (PRP He)) (VP (VBD left) (SBAR (IN because) (S (NP (PRP he)) (VP (VBD was) (ADJP (JJ tired)))))) (. .))"
PARIS = "(S (NP (NNP Paris)) (VP (VBZ is) (ADJP (JJ nice))) (. .))"
A_BECAUSE_B_AND_C_IF_D = (
    "(S (S (NP (PRP He)) (VP (VBD left) (SBAR (IN because) (S (NP (PRP she)) (VP (VBD arrived))))))"
    " (, ,) (CC and) (S (NP (PRP they)) (VP (MD will) (VP (VB stay) (SBAR (IN if) (S (NP (PRP it)) (VP (VBZ rains)))))))"
    " (. .))"
)


def text(tree) -> str:
    s = yield_text(tree)
    return s[:-2] if s.endswith(" .") else s


def doc(*ptb) -> Document:
    return Document("d", tuple(parse_ptb(s) for s in ptb))


class TestPattern:
    t = parse_ptb("(S (NP (DT the) (NN dog)) (VP (VBD barked) (PP (IN at) (NP (NNS cats)))) (. .))")

    @pytest.mark.parametrize(
        "src,ok",
        [
            ("S < NP < VP", True),
            ("S < NP=subj $+ VP", False),  # $+ binds to S, which has no sibling
            ("S < (NP $+ VP)", True),
            ("S <, NP <- /\\./", True),
            ("S << NNS", True),
            ("S !<< JJ", True),
            ("S < (VP <+(VP) VBD)", True),
            ("S < (VP < (PP <, IN{at,on}))", True),
            ("S < (VP < (PP <, IN!{at}))", False),
            ("S < NP|ADJP", True),
            ("S < __ < __", True),
            ("S < (NP ?< JJ=adj)", True),
            ("S < (NP $++ /^V/)", True),
            ("S < (VP $-- NP)", True),
            ("S < (VP $- NP)", True),
            ("NP > S", False),
        ],
    )
    def test_relations(self, src, ok):
        assert (TreePattern(src).match_root(self.t) is not None) is ok

    def test_bindings_are_nodes_of_the_tree(self):
        b = TreePattern("S < (NP=subj $+ (VP=pred < VBD=v))").match_root(self.t)
        assert yield_text(b["subj"]) == "the dog"
        assert b["v"].word == "barked"
        assert any(n is b["pred"] for n in self.t.preorder())

    def test_lexicon_reference(self):
        p = TreePattern("S < (VP < VBD{@verbs})", {"verbs": frozenset({"barked"})})
        assert p.matches(self.t)

    def test_finditer_preorder(self):
        hits = [yield_text(n) for n, _ in TreePattern("NP").finditer(self.t)]
        assert hits == ["the dog", "cats"]

    @pytest.mark.parametrize("src", ["", "S <", "S < (NP", "S <? NP", "S < NP)", "S < {a,b"])
    def test_syntax_errors(self, src):
        with pytest.raises(PatternSyntaxError):
            TreePattern(src)


class TestRuleSet:
    def test_default_rules_ordered_and_unique(self):
        prios = [r.priority for r in RS.rules]
        assert prios == sorted(prios) and len(set(prios)) == len(prios)
        names = [r.name for r in RS.rules]
        for needed in [
            "attribution",
            "preposed-subordination",
            "postposed-subordination",
            "clausal-coordination",
            "nonrestrictive-relative",
            "parenthetical",
        ]:
            assert needed in names

    @pytest.mark.parametrize(
        "cue,env,rel",
        [
            ("although", "subordination-preposed", R.CONTRAST),
            ("if", "subordination-postposed", R.CONDITION),
            ("because", "subordination-postposed", R.CAUSE),
            ("Because", "subordination-preposed", R.CAUSE),
            ("in order to", "subordination-postposed", R.PURPOSE),
            ("unless", "subordination-postposed", R.CONDITION),
            ("until", "subordination-postposed", R.TEMPORAL),
            ("wherever", "subordination-postposed", R.SPATIAL),
            ("and", "coordination", R.LIST),
            ("or", "coordination", R.DISJUNCTION),
            ("but", "coordination", R.CONTRAST),
            ("said", "attribution", R.ATTRIBUTION),
            ("", "coordination", R.UNKNOWN),
            ("", "attribution", R.UNKNOWN),
            ("banana", "subordination-preposed", R.UNKNOWN),
            ("if", "no-such-environment", R.UNKNOWN),
        ],
    )
    def test_classify_relation(self, cue, env, rel):
        assert classify_relation(cue, env) is rel

    def _minimal(self, **over):
        data = {
            "version": 1,
            "lexicons": {},
            "cue_tables": {"x": {"if": "CONDITION"}},
            "rules": [
                {
                    "name": "r",
                    "priority": 1,
                    "environment": "x",
                    "pattern": "S=top < (S=a $+ S=b)",
                    "children": [{"edge": "core", "build": "node a"}, {"edge": "core", "build": "node b"}],
                    "cue": "",
                }
            ],
        }
        data.update(over)
        return data

    def test_build_minimal(self):
        rs = build_ruleset(self._minimal())
        assert rs.classify("IF", "x") is R.CONDITION

    @pytest.mark.parametrize(
        "over",
        [
            {"version": 99},
            {"cue_tables": {"x": "y"}},
            {"cue_tables": {"x": "y", "y": "x"}},
            {"cue_tables": {"x": {"if": "NOT-A-RELATION"}}},
            {"cue_tables": {"x": "@missing=LIST"}},
        ],
    )
    def test_bad_rulesets(self, over):
        with pytest.raises(RuleSetError):
            build_ruleset(self._minimal(**over))

    def test_duplicate_priority(self):
        data = self._minimal()
        data["rules"].append(dict(data["rules"][0], name="r2"))
        with pytest.raises(RuleSetError):
            build_ruleset(data)

    @pytest.mark.parametrize(
        "child", [{"edge": "side", "build": "node a"}, {"edge": "core", "build": "explode a"}, {"edge": "core", "build": "node"}]
    )
    def test_bad_templates(self, child):
        data = self._minimal()
        data["rules"][0]["children"][0] = child
        with pytest.raises(RuleSetError):
            build_ruleset(data)

    def test_load_from_file(self, tmp_path):
        p = tmp_path / "rules.json"
        p.write_text(json.dumps(self._minimal()))
        assert [r.name for r in load_ruleset(p).rules] == ["r"]
        with pytest.raises(RuleSetError):
            load_ruleset(tmp_path / "missing.json")


class TestMatching:
    def test_single_clause_no_match(self):
        assert match_first_rule(parse_ptb(PARIS), RS.rules) is None

    def test_treasury_preposed(self, treasury_tree):
        rule, b = match_first_rule(treasury_tree, RS.rules)
        assert rule.name == "preposed-subordination"
        assert rule.cue.extract(b) == "although"

    def test_because_postposed(self):
        rule, b = match_first_rule(parse_ptb(BECAUSE), RS.rules)
        assert rule.name == "postposed-subordination"
        assert rule.cue.extract(b) == "because"

    def test_that_complement_is_not_subordination(self):
        t = parse_ptb("(S (NP (PRP He)) (VP (VBD hoped) (SBAR (IN that) (S (NP (PRP it)) (VP (VBD worked))))) (. .))")
        assert match_first_rule(t, RS.rules) is None

    def test_purpose_sbar_is_left_to_phrasal(self):
        t = parse_ptb(
            "(S (NP (NNS Dogs)) (VP (VBP bark) (SBAR (IN in) (NN order) (S (VP (TO to) (VP (VB warn) (NP (PRP us))))))) (. .))"
        )
        assert match_first_rule(t, RS.rules) is None


class TestApplyRule:
    def test_treasury_top_split(self, treasury_tree):
        rule, b = match_first_rule(treasury_tree, RS.rules)
        children, kind, cue = apply_rule(rule, b, treasury_tree)
        assert kind is ConstituencyType.COORDINATE and cue == "although"
        assert [e for e, _ in children] == [CORE, CORE]
        assert [text(t) for _, t in children] == [
            "the Treasury will announce details of the November refunding on Monday",
            "the funding will be delayed if Congress and President Bush fail to increase the Treasury 's borrowing capacity",
        ]

    def test_treasury_condition_split(self, treasury_tree):
        rule, b = match_first_rule(treasury_tree, RS.rules)
        _, second = apply_rule(rule, b, treasury_tree)[0][1]
        rule2, b2 = match_first_rule(second, RS.rules)
        children, kind, cue = apply_rule(rule2, b2, second)
        assert (kind, cue) == (ConstituencyType.SUBORDINATE, "if")
        assert [(e, text(t)) for e, t in children] == [
            (CORE, "the funding will be delayed"),
            (CONTEXT, "Congress and President Bush fail to increase the Treasury 's borrowing capacity"),
        ]

    def test_because(self):
        t = parse_ptb(BECAUSE)
        rule, b = match_first_rule(t, RS.rules)
        children, kind, cue = apply_rule(rule, b, t)
        assert cue == "because" and kind is ConstituencyType.SUBORDINATE
        assert [(e, text(c)) for e, c in children] == [(CORE, "He left"), (CONTEXT, "he was tired")]

    def test_children_reindexed_and_shorter(self, treasury_tree):
        rule, b = match_first_rule(treasury_tree, RS.rules)
        for _, t in apply_rule(rule, b, treasury_tree)[0]:
            assert [tok.index for tok in t.tokens()] == list(range(len(t)))
            assert len(t) < len(treasury_tree)

    def test_foreign_bindings_rejected(self, treasury_tree):
        rule, b = match_first_rule(treasury_tree, RS.rules)
        with pytest.raises(MalformedMatch):
            apply_rule(rule, b, parse_ptb(BECAUSE))


class TestTransformClausal:
    def test_init_tree(self):
        root = init_tree(doc(PARIS, PARIS, BECAUSE))
        assert root.kind is ConstituencyType.COORDINATE and root.relation is R.LIST
        assert [e for e, _ in root.children] == [CORE] * 3
        assert init_tree(Document("e")).children == ()

    def test_treasury_shape(self, treasury_doc):
        tree = transform_clausal(init_tree(treasury_doc))
        validate(tree)
        (edge, top), = tree.children
        assert (top.kind, top.relation) == (ConstituencyType.COORDINATE, R.CONTRAST)
        (e1, announce), (e2, cond) = top.children
        assert (e1, e2) == (CORE, CORE)
        assert isinstance(announce, Leaf)
        assert (cond.kind, cond.relation) == (ConstituencyType.SUBORDINATE, R.CONDITION)
        assert [(e, text(c.sentence)) for e, c in cond.children] == [
            (CORE, "the funding will be delayed"),
            (CONTEXT, "Congress and President Bush fail to increase the Treasury 's borrowing capacity"),
        ]

    def test_identity_on_simple_sentence(self):
        root = init_tree(doc(PARIS))
        assert transform_clausal(root) == root

    def test_three_level(self):
        tree = transform_clausal(init_tree(doc(A_BECAUSE_B_AND_C_IF_D)))
        validate(tree)
        (_, top), = tree.children
        assert (top.kind, top.relation) == (ConstituencyType.COORDINATE, R.LIST)
        rels = [(c.kind, c.relation) for _, c in top.children]
        assert rels == [(ConstituencyType.SUBORDINATE, R.CAUSE), (ConstituencyType.SUBORDINATE, R.CONDITION)]
        assert [text(lf.sentence) for lf in leaves(tree)] == ["He left", "she arrived", "they will stay", "it rains"]

    def test_fixpoint(self, treasury_doc):
        once = transform_clausal(init_tree(treasury_doc))
        assert to_canonical(transform_clausal(once)) == to_canonical(once)

    @pytest.mark.parametrize(
        "ptb,rule_words",
        [
            (
                "(S (NP (DT The) (NN spokesman)) (VP (VBD said) (SBAR (IN that) (S (NP (DT the) (NN firm)) (VP (VBD grew))))) (. .))",
                ("the firm grew", "The spokesman said", R.ATTRIBUTION),
            ),
            (
                "(S (S (NP (NNS Sales)) (VP (VBD fell))) (, ,) (NP (DT the) (NN report)) (VP (VBD said)) (. .))",
                ("Sales fell", "the report said", R.ATTRIBUTION),
            ),
            (
                "(S (NP (NP (NNP Anna)) (, ,) (SBAR (WHNP (WP who)) (S (VP (VBZ sings)))) (, ,)) (VP (VBD won)) (. .))",
                ("Anna won", "Anna sings", R.ELABORATION),
            ),
            (
                "(S (NP (DT The) (NN plan)) (PRN (, ,) (S (NP (NNS experts)) (VP (VBP argue))) (, ,)) (VP (MD will) (VP (VB fail))) (. .))",
                ("The plan will fail", "experts argue", R.ATTRIBUTION),
            ),
        ],
    )
    def test_subordinating_rules(self, ptb, rule_words):
        core_text, ctx_text, relation = rule_words
        tree = transform_clausal(init_tree(doc(ptb)))
        validate(tree)
        (_, node), = tree.children
        assert node.kind is ConstituencyType.SUBORDINATE and node.relation is relation
        got = {e: text(c.sentence) for e, c in node.children}
        assert got == {CORE: core_text, CONTEXT: ctx_text}


class TestNodes:
    def _tree(self):
        s = parse_ptb
        a, b, c = (Leaf(s(f"(S (NN {w}))")) for w in "abc")
        inner = Internal(ConstituencyType.SUBORDINATE, R.CAUSE, ((CORE, b), (CONTEXT, c)))
        return a, b, c, Internal(ConstituencyType.COORDINATE, R.LIST, ((CORE, a), (CONTEXT, inner)))

    def test_layers_and_nuclei(self):
        a, b, c, _ = self._tree()
        inner = Internal(ConstituencyType.SUBORDINATE, R.CAUSE, ((CORE, b), (CONTEXT, c)))
        deeper = Internal(ConstituencyType.SUBORDINATE, R.CAUSE, ((CORE, a), (CONTEXT, inner)))
        assert [(lf.sentence.words()[0], cl) for lf, cl in leaves_with_layer(deeper)] == [("a", 0), ("b", 1), ("c", 2)]
        assert [lf.sentence.words()[0] for lf in nuclei(deeper)] == ["a"]

    def test_validate_rejects(self):
        *_, bad = self._tree()
        with pytest.raises(InvalidDiscourseTree):
            validate(bad)
        a, b, *_ = self._tree()
        with pytest.raises(InvalidDiscourseTree):
            validate(Internal(ConstituencyType.SUBORDINATE, R.CAUSE, ((CORE, a), (CORE, b))))
        with pytest.raises(InvalidDiscourseTree):
            validate(Internal(ConstituencyType.COORDINATE, R.LIST, ((CORE, Internal(ConstituencyType.COORDINATE, R.LIST, ((CORE, a),))),)))

    def test_relation_names(self):
        assert {r.value for r in R} >= {"LIST", "CONTRAST", "CONDITION", "ELABORATION", "UNKNOWN"}
        assert all(r.value.isupper() and r.value.isascii() for r in R)
        assert R.parse("condition") is R.CONDITION
        with pytest.raises(ValueError):
            R.parse("nope")

    def test_render(self, treasury_doc):
        out = render(transform_clausal(init_tree(treasury_doc)))
        assert "Coordination CONTRAST" in out and "Subordination CONDITION" in out
