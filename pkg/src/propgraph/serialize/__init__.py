from .jsonfmt import emit_json, graph_from_dict, graph_to_dict, parse_json
from .ntriples import IriMapping, emit_ntriples, escape_text
from .rdfnl import DanglingReference, FormatError, emit_rdfnl, format_proposition, parse_rdfnl


def serialize(graph, fmt: str = "rdfnl", base_iri: str | None = None) -> str:
    if fmt == "rdfnl":
        return emit_rdfnl(graph)
    if fmt == "ntriples":
        return emit_ntriples(graph, IriMapping(base_iri) if base_iri else None)
    if fmt == "json":
        return emit_json(graph)
    raise ValueError(f"unknown output format {fmt!r}")


def read_graph(text: str):
    """Read a previously emitted RDF-NL or JSON extraction."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_rdfnl(text)
