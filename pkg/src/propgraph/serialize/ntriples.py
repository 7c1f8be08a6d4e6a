"""N-Triples rendering of a proposition graph.

Every sentence and proposition is a blank node. Argument strings and simple
context phrases become text IRIs under ``<base>text#`` (spaces as ``+``,
everything else outside the unreserved set percent-encoded), each of which
is also mapped to its literal value through ``rdf:value``.
"""

from __future__ import annotations

from dataclasses import dataclass
from urllib.parse import quote

from ..graph import PropositionGraph

DEFAULT_BASE_IRI = "http://example.org/propgraph/"
RDF_VALUE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#value"


@dataclass(frozen=True)
class IriMapping:
    base_iri: str = DEFAULT_BASE_IRI

    def __post_init__(self):
        if any(c in self.base_iri for c in '<>"{}|^`\\ '):
            raise ValueError(f"base IRI contains characters not allowed in an IRI: {self.base_iri!r}")

    def sentence(self, name: str) -> str:
        return f"<{self.base_iri}sentence#{name}>"

    def extraction(self, name: str) -> str:
        return f"<{self.base_iri}extraction#{name}>"

    def text(self, s: str) -> str:
        return f"<{self.base_iri}text#{escape_text(s)}>"


def escape_text(s: str) -> str:
    """Injective over strings: '+' only ever stands for a space."""
    return "+".join(quote(part, safe="") for part in s.split(" "))


def literal(s: str) -> str:
    out = (
        s.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\r", "\\r")
        .replace("\t", "\\t")
    )
    return f'"{out}"'


def emit_ntriples(g: PropositionGraph, m: IriMapping | None = None) -> str:
    m = m or IriMapping()
    lines: list[str] = []
    texts: dict[str, None] = {}

    def text_iri(s: str) -> str:
        texts.setdefault(s, None)
        return m.text(s)

    for si, sent in enumerate(g.sentences, start=1):
        s_node = f"_:s{si}"
        lines.append(f"{s_node} {m.sentence('original-text')} {literal(sent.text)} .")
        for p in sent.propositions:
            lines.append(f"{s_node} {m.sentence('has-extraction')} _:e{p.id} .")
        for p in sent.propositions:
            e = f"_:e{p.id}"
            lines.append(f"{e} {m.extraction('context-layer')} {literal(str(p.cl))} .")
            lines.append(f"{e} {m.extraction('subject')} {text_iri(p.t.arg_subj)} .")
            lines.append(f"{e} {m.extraction('predicate')} {text_iri(p.t.rel)} .")
            if p.t.arg_obj:
                lines.append(f"{e} {m.extraction('object')} {text_iri(p.t.arg_obj)} .")
            for c in p.simple:
                lines.append(f"{e} {m.extraction('S-' + c.relation.value)} {text_iri(c.phrase)} .")
            for c in p.linked:
                lines.append(f"{e} {m.extraction('L-' + c.relation.value)} _:e{c.target_id} .")
    for s in texts:
        lines.append(f"{m.text(s)} <{RDF_VALUE}> {literal(s)} .")
    # a repeated context is one RDF fact; print it once
    lines = list(dict.fromkeys(lines))
    return "\n".join(lines) + "\n" if lines else ""
