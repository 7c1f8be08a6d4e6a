from __future__ import annotations

from typing import Optional

from ..discourse.nodes import RhetoricalRelation
from ..graph import Proposition, PropositionGraph

R = RhetoricalRelation

# Interrogative phrase -> relation to follow. Longer phrases first.
QUESTION_RELATIONS: tuple[tuple[str, RhetoricalRelation], ...] = (
    ("under which circumstances", R.CONDITION),
    ("under what circumstances", R.CONDITION),
    ("on what condition", R.CONDITION),
    ("according to whom", R.ATTRIBUTION),
    ("for what purpose", R.PURPOSE),
    ("for what reason", R.CAUSE),
    ("what happened after", R.TEMPORAL),
    ("in spite of what", R.CONTRAST),
    ("what for", R.PURPOSE),
    ("who said", R.ATTRIBUTION),
    ("why", R.CAUSE),
    ("when", R.TEMPORAL),
    ("where", R.SPATIAL),
)


def relation_for_question(question: str) -> Optional[RhetoricalRelation]:
    q = " ".join(question.lower().split())
    for phrase, rel in QUESTION_RELATIONS:
        if q.startswith(phrase) or f" {phrase} " in f" {q} ":
            return rel
    return None


def query(g: PropositionGraph, relation: RhetoricalRelation, pattern: str) -> list[Proposition]:
    """Propositions reached by a ``relation`` link from any proposition whose
    tuple text contains ``pattern`` (case-insensitive)."""
    needle = pattern.lower()
    targets: set[int] = set()
    for p in g.propositions():
        if needle in p.t.text().lower():
            targets.update(link.target_id for link in p.linked if link.relation is relation)
    return [p for p in g.propositions() if p.id in targets]
