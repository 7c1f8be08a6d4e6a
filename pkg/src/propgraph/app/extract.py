"""Shared extraction path for the CLI and the service, so both emit the same bytes."""

from __future__ import annotations

from typing import Optional, Sequence

from ..discourse.rules import RuleSet
from ..pipeline import PipelineConfig, run_pipeline
from ..serialize import serialize
from ..text.client import ParserClient, fetch_parses
from ..text.document import Document, SentenceParseError
from ..text.tree import PTBParseError, parse_ptb


class MissingInput(ValueError):
    """Neither pre-parsed input nor a parser endpoint is available."""


def document_from_sentences(sentences: Sequence[str], doc_id: str = "doc") -> Document:
    trees = []
    for i, s in enumerate(sentences, start=1):
        try:
            trees.append(parse_ptb(s))
        except PTBParseError as exc:
            raise SentenceParseError(i, exc) from exc
    return Document(doc_id, tuple(trees))


def document_from_text(text: str, cfg: PipelineConfig, doc_id: str = "doc") -> Document:
    if not cfg.parser_endpoint:
        raise MissingInput("raw text needs a parser endpoint")
    client = ParserClient(cfg.parser_endpoint, cfg.parser_timeout)
    return Document(doc_id, tuple(fetch_parses(client, text)), source_text=text)


def extract_serialized(doc: Document, cfg: PipelineConfig, ruleset: Optional[RuleSet] = None) -> str:
    graph = run_pipeline(doc, cfg, ruleset=ruleset)
    return serialize(graph, cfg.output_format, cfg.base_iri)
