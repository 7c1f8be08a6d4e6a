"""scikit-learn style wrapper around the extraction pipeline.

``X`` is a sequence of documents. Each item may be a ``Document``, a parse
tree, a PTB string (one or more trees), or a list of PTB strings/trees.
``fit`` only validates parameters and loads the rule set; the model is
rule-based and learns nothing from data.
"""

from __future__ import annotations

from typing import Iterable, Optional

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .graph import PropositionGraph
from .pipeline import OUTPUT_FORMATS, PipelineConfig, run_pipeline
from .serialize import serialize
from .serialize.ntriples import DEFAULT_BASE_IRI
from .text.document import Document
from .text.tree import ParseTree, parse_ptb, parse_ptb_many


def _as_tree(item) -> ParseTree:
    if isinstance(item, ParseTree):
        return item
    if isinstance(item, str):
        return parse_ptb(item)
    raise TypeError(f"expected a ParseTree or PTB string, got {type(item).__name__}")


def check_documents(X: Iterable) -> list[Document]:
    """Coerce ``X`` to a list of documents, rejecting anything else."""
    if isinstance(X, (str, bytes, Document, ParseTree)):
        raise TypeError("X must be a sequence of documents, not a single document")
    docs = []
    for i, item in enumerate(X):
        if isinstance(item, Document):
            docs.append(item)
        elif isinstance(item, ParseTree):
            docs.append(Document(f"doc{i}", (item,)))
        elif isinstance(item, str):
            docs.append(Document(f"doc{i}", tuple(parse_ptb_many(item))))
        elif isinstance(item, (list, tuple)):
            docs.append(Document(f"doc{i}", tuple(_as_tree(s) for s in item)))
        else:
            raise TypeError(f"X[{i}]: unsupported document type {type(item).__name__}")
    return docs


class PropositionExtractor(TransformerMixin, BaseEstimator):
    """Turns documents into proposition graphs (or their serializations).

    ``output="graph"`` yields ``PropositionGraph`` objects; any serializer
    name yields strings.
    """

    def __init__(
        self,
        do_clausal: bool = True,
        do_phrasal: bool = True,
        rules_path: Optional[str] = None,
        output: str = "graph",
        base_iri: str = DEFAULT_BASE_IRI,
    ):
        self.do_clausal = do_clausal
        self.do_phrasal = do_phrasal
        self.rules_path = rules_path
        self.output = output
        self.base_iri = base_iri

    def _config(self) -> PipelineConfig:
        if self.output != "graph" and self.output not in OUTPUT_FORMATS:
            raise ValueError(f"output must be 'graph' or one of {OUTPUT_FORMATS}, got {self.output!r}")
        return PipelineConfig(
            output_format=self.output if self.output != "graph" else "rdfnl",
            do_clausal=bool(self.do_clausal),
            do_phrasal=bool(self.do_phrasal),
            rules_path=self.rules_path,
            base_iri=self.base_iri,
        )

    def fit(self, X=None, y=None):
        if X is not None:
            check_documents(X)
        cfg = self._config()
        self.ruleset_ = cfg.ruleset()
        self.config_ = cfg
        return self

    def transform(self, X) -> list:
        check_is_fitted(self, "ruleset_")
        out = []
        for doc in check_documents(X):
            g: PropositionGraph = run_pipeline(doc, self.config_, ruleset=self.ruleset_)
            out.append(g if self.output == "graph" else serialize(g, self.output, self.base_iri))
        return out

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.two_d_array = False
        tags.input_tags.string = True
        tags.requires_fit = True
        return tags
