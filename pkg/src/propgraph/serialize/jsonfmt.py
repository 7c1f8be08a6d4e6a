"""JSON interchange format.

Schema::

    {"sentences": [
      {"text": str,
       "propositions": [
         {"id": int, "contextLayer": int, "subject": str, "relation": str, "object": str,
          "simpleContexts": [{"type": RELATION, "text": str}],
          "linkedContexts": [{"type": RELATION, "target": int}]}]}]}
"""

from __future__ import annotations

import json

from ..discourse.nodes import RhetoricalRelation, SimpleContext
from ..graph import LinkedContext, Proposition, PropositionGraph, RelationalTuple, SentenceGroup


def graph_to_dict(g: PropositionGraph) -> dict:
    return {
        "sentences": [
            {
                "text": s.text,
                "propositions": [
                    {
                        "id": p.id,
                        "contextLayer": p.cl,
                        "subject": p.t.arg_subj,
                        "relation": p.t.rel,
                        "object": p.t.arg_obj,
                        "simpleContexts": [{"type": c.relation.value, "text": c.phrase} for c in p.simple],
                        "linkedContexts": [{"type": c.relation.value, "target": c.target_id} for c in p.linked],
                    }
                    for p in s.propositions
                ],
            }
            for s in g.sentences
        ]
    }


def emit_json(g: PropositionGraph, indent: int | None = 2) -> str:
    return json.dumps(graph_to_dict(g), indent=indent, ensure_ascii=False) + "\n"


def graph_from_dict(obj: dict) -> PropositionGraph:
    groups = []
    for s in obj.get("sentences", []):
        props = []
        for p in s.get("propositions", []):
            props.append(
                Proposition(
                    int(p["id"]),
                    int(p["contextLayer"]),
                    RelationalTuple(p["relation"], p["subject"], p.get("object", "")),
                    tuple(SimpleContext(c["text"], RhetoricalRelation.parse(c["type"])) for c in p.get("simpleContexts", [])),
                    tuple(LinkedContext(int(c["target"]), RhetoricalRelation.parse(c["type"])) for c in p.get("linkedContexts", [])),
                )
            )
        groups.append(SentenceGroup(s["text"], tuple(props)))
    g = PropositionGraph(tuple(groups))
    g.validate()
    return g


def parse_json(text: str) -> PropositionGraph:
    return graph_from_dict(json.loads(text))
