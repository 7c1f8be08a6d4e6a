from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional

from .discourse.engine import init_tree, transform_clausal
from .discourse.nodes import DiscourseNode, leaves
from .discourse.rules import RuleSet, default_ruleset, load_ruleset
from .graph import Diagnostics, ExtractionError, PropositionGraph, RelationalTuple, extract_tuple, link_propositions
from .phrasal import transform_phrasal
from .serialize.ntriples import DEFAULT_BASE_IRI
from .text.document import Document
from .text.tree import ParseTree, yield_text

log = logging.getLogger(__name__)

OUTPUT_FORMATS = ("rdfnl", "ntriples", "json")


class PipelineError(RuntimeError):
    def __init__(self, message: str, doc_id: str, sentence: Optional[int] = None):
        where = f"document {doc_id}" + (f", sentence {sentence}" if sentence is not None else "")
        super().__init__(f"{where}: {message}")
        self.doc_id = doc_id
        self.sentence = sentence


@dataclass(frozen=True)
class PipelineConfig:
    input_format: str = "ptb-lines"
    output_format: str = "rdfnl"
    do_clausal: bool = True
    do_phrasal: bool = True
    rules_path: Optional[str] = None
    parser_endpoint: Optional[str] = None
    parser_timeout: float = 10.0
    base_iri: str = DEFAULT_BASE_IRI

    def __post_init__(self):
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output format must be one of {OUTPUT_FORMATS}")

    def ruleset(self) -> RuleSet:
        return load_ruleset(self.rules_path) if self.rules_path else default_ruleset()


def build_discourse_tree(doc: Document, cfg: PipelineConfig, ruleset: Optional[RuleSet] = None) -> DiscourseNode:
    rs = ruleset or cfg.ruleset()
    tree: DiscourseNode = init_tree(doc)
    if cfg.do_clausal:
        tree = transform_clausal(tree, rs)
    if cfg.do_phrasal:
        tree = transform_phrasal(tree, rs)
    return tree


def run_pipeline(
    doc: Document,
    cfg: Optional[PipelineConfig] = None,
    *,
    ruleset: Optional[RuleSet] = None,
    extractor: Callable[[ParseTree], RelationalTuple] = extract_tuple,
    diagnostics: Optional[Diagnostics] = None,
) -> PropositionGraph:
    """Document in, proposition graph out. ``extractor`` may be any single-sentence
    relation extractor raising ``ExtractionError`` for sentences it cannot handle."""
    cfg = cfg or PipelineConfig()
    rs = ruleset or cfg.ruleset()
    tree = build_discourse_tree(doc, cfg, rs)

    tuples: list[Optional[RelationalTuple]] = []
    sentence_of_leaf = []
    for i, (_, sent) in enumerate(tree.children):
        sentence_of_leaf.extend([i] * sum(1 for _ in leaves(sent)))
    for i, leaf in zip(sentence_of_leaf, leaves(tree)):
        try:
            tuples.append(extractor(leaf.sentence))
        except ExtractionError as exc:
            log.info("document %s, sentence %d: skipped leaf: %s", doc.id, i, exc)
            if diagnostics is not None:
                diagnostics.add(i, str(exc))
            tuples.append(None)
    texts = [yield_text(s) for s in doc.sentences]
    try:
        return link_propositions(tree, tuples, texts)
    except Exception as exc:
        raise PipelineError(str(exc), doc.id) from exc
