"""Desk-scale precision/recall against hand-written gold tuples.

A predicted tuple matches a gold tuple when, after lowercasing and dropping
punctuation, the head token of each gold field occurs among the tokens of the
corresponding predicted field. The head is the last remaining token of the
field. An empty gold object only matches an empty predicted object. Gold
tuples are consumed greedily, predictions visited in id order.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from ..graph import PropositionGraph, RelationalTuple
from ..text.document import Document
from ..text.tree import parse_ptb

_PUNCT = set(string.punctuation) | {"``", "''", "-lrb-", "-rrb-"}


class EmptyGold(ValueError):
    pass


@dataclass(frozen=True)
class GoldRecord:
    tuples: tuple[tuple[str, str, str], ...]
    parse: Optional[str] = None
    text: Optional[str] = None
    links: tuple[tuple[int, str, int], ...] = ()

    def __post_init__(self):
        if not self.tuples:
            raise EmptyGold("gold record without tuples")


@dataclass(frozen=True)
class Score:
    precision: float
    recall: float
    matched_predicted: int
    total_predicted: int
    matched_gold: int
    total_gold: int

    def __iter__(self):
        return iter((self.precision, self.recall))


def _tokens(field: str) -> list[str]:
    out = []
    for tok in field.lower().split():
        if tok in _PUNCT:
            continue
        tok = tok.strip(string.punctuation)
        if tok:
            out.append(tok)
    return out


def head(field: str) -> Optional[str]:
    toks = _tokens(field)
    return toks[-1] if toks else None


def tuple_matches(pred: RelationalTuple, gold: tuple[str, str, str]) -> bool:
    g_subj, g_rel, g_obj = gold
    for g, p in ((g_subj, pred.arg_subj), (g_rel, pred.rel)):
        h = head(g)
        if h is None or h not in _tokens(p):
            return False
    h = head(g_obj)
    if h is None:
        return not _tokens(pred.arg_obj)
    return h in _tokens(pred.arg_obj)


def score(predicted: PropositionGraph, gold: Sequence[GoldRecord]) -> Score:
    if not gold:
        raise EmptyGold("no gold records")
    total_gold = sum(len(r.tuples) for r in gold)
    aligned = len(predicted.sentences) == len(gold)
    if aligned:
        pools = [(list(s.propositions), list(r.tuples)) for s, r in zip(predicted.sentences, gold)]
    else:
        pools = [(list(predicted.propositions()), [t for r in gold for t in r.tuples])]

    matched = 0
    total_pred = 0
    for preds, golds in pools:
        used = [False] * len(golds)
        total_pred += len(preds)
        for p in sorted(preds, key=lambda p: p.id):
            for k, g in enumerate(golds):
                if not used[k] and tuple_matches(p.t, g):
                    used[k] = True
                    matched += 1
                    break
    precision = matched / total_pred if total_pred else 0.0
    recall = matched / total_gold
    return Score(precision, recall, matched, total_pred, matched, total_gold)


def load_gold(path) -> list[GoldRecord]:
    """Gold file: {"records": [{"parse": str, "text": str?, "tuples": [[subj, rel, obj], ...]}]}."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    records = data["records"] if isinstance(data, dict) else data
    out = []
    for r in records:
        tuples = tuple((t[0], t[1], t[2] if len(t) > 2 else "") for t in r["tuples"])
        links = tuple(tuple(x) for x in r.get("links", []))
        out.append(GoldRecord(tuples, r.get("parse"), r.get("text"), links))
    if not out:
        raise EmptyGold(f"{path} holds no gold records")
    return out


def gold_document(gold: Sequence[GoldRecord], doc_id: str = "gold") -> Document:
    missing = [i for i, r in enumerate(gold) if not r.parse]
    if missing:
        raise ValueError(f"gold records {missing} carry no parse")
    return Document(doc_id, tuple(parse_ptb(r.parse) for r in gold))
