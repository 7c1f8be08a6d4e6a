import pytest

from propgraph.discourse import CONTEXT, CORE, RhetoricalRelation, SimpleContext
from propgraph.discourse.nodes import ConstituencyType, Internal, Leaf, leaves, validate
from propgraph.phrasal import (
    ADVP,
    PP,
    PURPOSE,
    classify_phrase,
    disembed_phrases,
    expand_leaf,
)
from propgraph.text import parse_ptb, yield_text

R = RhetoricalRelation

ANNOUNCE = (
    "(S (NP (DT the) (NNP Treasury)) (VP (MD will) (VP (VB announce) (NP (NP (NNS details)) (PP (IN of) "
    "(NP (DT the) (NNP November) (NN refunding)))) (PP (IN on) (NP (NNP Monday))))))"
)
FAIL = (
    "(S (NP (NP (NNP Congress)) (CC and) (NP (NNP President) (NNP Bush))) (VP (VBP fail) (S (VP (TO to) "
    "(VP (VB increase) (NP (NP (DT the) (NNP Treasury) (POS 's)) (NN borrowing) (NN capacity)))))))"
)
CONGRESS_FAIL = (
    "(S (NP (NNP Congress)) (VP (VBP fail) (S (VP (TO to) "
    "(VP (VB increase) (NP (NP (DT the) (NNP Treasury) (POS 's)) (NN borrowing) (NN capacity)))))))"
)
CASSINI = "(S (NP (NP (NNP Cassini)) (, ,) (NP (DT an) (NN astronomer)) (, ,)) (VP (VBD died)) (. .))"


def run(ptb):
    return disembed_phrases(parse_ptb(ptb))


def text(t):
    s = yield_text(t)
    return s[:-2] if s.endswith(" .") else s


class TestDisembed:
    def test_temporal_pp(self):
        res = run(ANNOUNCE)
        assert text(res.core) == "the Treasury will announce details of the November refunding"
        assert res.simple_contexts == (SimpleContext("on Monday", R.TEMPORAL),)
        assert res.spawned == ()

    def test_np_enumeration(self):
        res = run(FAIL)
        assert text(res.core) == "Congress fail to increase the Treasury 's borrowing capacity"
        assert [(s.edge, text(s.sentence), s.relation) for s in res.spawned] == [
            (CORE, "President Bush fail to increase the Treasury 's borrowing capacity", R.LIST)
        ]

    def test_complement_infinitive_kept(self):
        res = run(CONGRESS_FAIL)
        assert not res.changed
        assert res.core == parse_ptb(CONGRESS_FAIL)

    def test_appositive(self):
        res = run(CASSINI)
        assert text(res.core) == "Cassini died"
        assert [(s.edge, text(s.sentence), s.relation) for s in res.spawned] == [
            (CONTEXT, "Cassini is an astronomer", R.ELABORATION)
        ]

    def test_proper_name_appositions_kept(self):
        res = run("(S (NP (NP (NNP Paris)) (, ,) (NP (NNP Texas))) (VP (VBZ is) (ADJP (JJ small))) (. .))")
        assert res.spawned == ()

    def test_participial(self):
        res = run(
            "(S (NP (NP (DT The) (NN bridge)) (VP (VBN built) (PP (IN by) (NP (DT the) (NNS Romans))))) "
            "(VP (VBZ remains) (ADJP (JJ intact))) (. .))"
        )
        assert text(res.core) == "The bridge remains intact"
        assert [(text(s.sentence), s.relation) for s in res.spawned] == [("The bridge was built by the Romans", R.ELABORATION)]

    def test_leading_participle_agrees_and_lowercases(self):
        res = run(
            "(S (S (VP (VBG Walking) (PP (IN through) (NP (DT the) (NN forest))))) (, ,) (NP (DT the) (NNS hikers)) "
            "(VP (VBD saw) (NP (DT a) (NN deer))) (. .))"
        )
        assert text(res.core) == "the hikers saw a deer"
        assert [text(s.sentence) for s in res.spawned] == ["the hikers are walking through the forest"]

    def test_vp_coordination(self):
        res = run(
            "(S (NP (DT The) (NN chef)) (VP (VP (VBD cooked) (NP (DT the) (NN meal))) (CC or) "
            "(VP (VBD served) (NP (DT the) (NNS guests)))) (. .))"
        )
        assert text(res.core) == "The chef cooked the meal"
        assert [(s.edge, text(s.sentence), s.relation) for s in res.spawned] == [
            (CORE, "The chef served the guests", R.DISJUNCTION)
        ]

    def test_flat_enumeration_three_way(self):
        res = run(
            "(S (NP (DT The) (NN shop)) (VP (VBZ sells) (NP (NP (NNS apples)) (, ,) (NP (NNS pears)) (CC and) "
            "(NP (NNS plums)))) (. .))"
        )
        sents = [text(res.core)] + [text(s.sentence) for s in res.spawned]
        assert sents == ["The shop sells apples", "The shop sells pears", "The shop sells plums"]

    @pytest.mark.parametrize(
        "ptb,core,contexts",
        [
            (
                "(S (ADVP (RB Unfortunately)) (, ,) (NP (DT the) (NN train)) (VP (VBD arrived) (ADVP (RB late))) (. .))",
                "the train arrived",
                [("Unfortunately", R.UNKNOWN), ("late", R.UNKNOWN)],
            ),
            (
                "(S (NP (JJ Last) (NN year)) (, ,) (NP (DT the) (NN firm)) (VP (VBD opened) (NP (NNS offices))) (. .))",
                "the firm opened offices",
                [("Last year", R.TEMPORAL)],
            ),
            (
                "(S (ADJP (JJ Angry) (PP (IN about) (NP (DT the) (NN delay)))) (, ,) (NP (DT the) (NNS passengers)) "
                "(VP (VBD complained)) (. .))",
                "the passengers complained",
                [("Angry about the delay", R.UNKNOWN)],
            ),
            (
                "(S (NP (DT The) (NN city)) (VP (VBD raised) (NP (NNS taxes)) (S (VP (TO to) (VP (VB fund) "
                "(NP (NNS schools)))))) (. .))",
                "The city raised taxes",
                [("to fund schools", R.PURPOSE)],
            ),
            (
                "(S (NP (DT The) (NN board)) (VP (MD will) (VP (VB meet) (NP (NNP Friday)))) (. .))",
                "The board will meet",
                [("Friday", R.TEMPORAL)],
            ),
            (
                "(S (NP (NNS Kids)) (VP (VBD played) (PP (IN in) (NP (DT the) (NN park))) (PP (IN during) "
                "(NP (DT the) (NN storm)))) (. .))",
                "Kids played",
                [("in the park", R.SPATIAL), ("during the storm", R.TEMPORAL)],
            ),
        ],
    )
    def test_adjuncts(self, ptb, core, contexts):
        res = run(ptb)
        assert text(res.core) == core
        assert sorted((c.phrase, c.relation) for c in res.simple_contexts) == sorted(contexts)

    @pytest.mark.parametrize(
        "ptb",
        [
            "(S (NP (PRP She)) (VP (VBD looked) (PP (IN at) (NP (PRP him)))) (. .))",
            "(S (NP (PRP She)) (VP (VBZ is) (PP (IN in) (NP (NNP Paris)))) (. .))",
            "(S (NP (PRP He)) (VP (VBD talked) (PP (IN about) (NP (NNS taxes)))) (. .))",
            "(S (NP (PRP They)) (VP (VBP do) (RB not) (VP (VB agree))) (. .))",
        ],
    )
    def test_arguments_kept(self, ptb):
        assert not run(ptb).changed

    def test_fixpoint(self):
        for ptb in (ANNOUNCE, FAIL, CASSINI):
            res = run(ptb)
            again = disembed_phrases(res.core)
            assert not again.changed and again.core == res.core


class TestClassify:
    @pytest.mark.parametrize(
        "ptb,cat,rel",
        [
            ("(PP (IN on) (NP (NNP Monday)))", PP, R.TEMPORAL),
            ("(PP (IN in) (NP (NNP Paris)))", PP, R.SPATIAL),
            ("(PP (IN in) (NP (CD 1990)))", PP, R.TEMPORAL),
            ("(PP (IN in) (NP (NNP March)))", PP, R.TEMPORAL),
            ("(PP (IN during) (NP (DT the) (NN storm)))", PP, R.TEMPORAL),
            ("(PP (IN near) (NP (DT the) (NN river)))", PP, R.SPATIAL),
            ("(PP (IN despite) (NP (DT the) (NN rain)))", PP, R.UNKNOWN),
            ("(ADVP (RB however))", ADVP, R.UNKNOWN),
            ("(ADVP (RB yesterday))", ADVP, R.TEMPORAL),
            ("(S (VP (TO to) (VP (VB win))))", PURPOSE, R.PURPOSE),
        ],
    )
    def test_classify(self, ptb, cat, rel):
        assert classify_phrase(parse_ptb(ptb), cat) is rel

    def test_total_on_empty(self):
        assert classify_phrase(parse_ptb("(PP (IN x))"), "no-such-category") is R.UNKNOWN


class TestExpandLeaf:
    def test_enumeration_becomes_list_coordination(self):
        node = expand_leaf(Leaf(parse_ptb(FAIL)))
        assert isinstance(node, Internal)
        assert (node.kind, node.relation) == (ConstituencyType.COORDINATE, R.LIST)
        assert [text(lf.sentence) for lf in leaves(node)] == [
            "Congress fail to increase the Treasury 's borrowing capacity",
            "President Bush fail to increase the Treasury 's borrowing capacity",
        ]
        validate(node, root=False)

    def test_contexts_attach_to_core_leaf(self):
        node = expand_leaf(Leaf(parse_ptb(ANNOUNCE)))
        assert isinstance(node, Leaf)
        assert node.contexts == (SimpleContext("on Monday", R.TEMPORAL),)

    def test_appositive_becomes_elaboration(self):
        node = expand_leaf(Leaf(parse_ptb(CASSINI)))
        assert (node.kind, node.relation) == (ConstituencyType.SUBORDINATE, R.ELABORATION)
        assert [(e, text(c.sentence)) for e, c in node.children] == [
            (CORE, "Cassini died"),
            (CONTEXT, "Cassini is an astronomer"),
        ]

    def test_unchanged_leaf_is_returned(self):
        lf = Leaf(parse_ptb(CONGRESS_FAIL))
        assert expand_leaf(lf) == lf
