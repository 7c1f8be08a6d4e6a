"""Discourse-aware open information extraction over constituency parses."""

from .discourse.nodes import RhetoricalRelation
from .graph import LinkedContext, Proposition, PropositionGraph, RelationalTuple
from .pipeline import PipelineConfig, PipelineError, run_pipeline
from .serialize import read_graph, serialize
from .text.document import Document, load_document
from .text.tree import ParseTree, parse_ptb

__version__ = "0.1.0"

__all__ = [
    "Document",
    "LinkedContext",
    "ParseTree",
    "PipelineConfig",
    "PipelineError",
    "Proposition",
    "PropositionGraph",
    "RelationalTuple",
    "RhetoricalRelation",
    "load_document",
    "parse_ptb",
    "read_graph",
    "run_pipeline",
    "serialize",
]
