"""Command line entry point: ``propgraph extract|query|score|serve``.

Exit codes: 0 success, 1 input error, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

from ..discourse.nodes import RhetoricalRelation
from ..discourse.rules import RuleSetError
from ..graph import ExtractionError
from ..pipeline import OUTPUT_FORMATS, PipelineConfig, PipelineError, run_pipeline
from ..serialize import FormatError, format_proposition, read_graph
from ..text.client import ParserClientError
from ..text.document import DocumentDecodeError, SentenceParseError, load_document
from .config import AppConfig, ConfigError, load_config
from .extract import MissingInput, document_from_text, extract_serialized
from .query import QUESTION_RELATIONS, query, relation_for_question
from .scoring import EmptyGold, gold_document, load_gold, score

EXIT_OK, EXIT_INPUT, EXIT_CONFIG = 0, 1, 2
INPUT_FORMATS = ("ptb-lines", "json-doc", "text")

log = logging.getLogger("propgraph")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_input(path: Optional[str]) -> str:
    if path and path != "-":
        try:
            return Path(path).read_bytes().decode("utf-8")
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_INPUT) from exc
        except UnicodeDecodeError as exc:
            raise CliError(f"{path} is not valid UTF-8", EXIT_INPUT) from exc
    if sys.stdin is None or sys.stdin.isatty():
        return ""
    return sys.stdin.read()


def _write_output(path: Optional[str], text: str) -> None:
    if path and path != "-":
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise CliError(f"cannot write {path}: {exc.strerror}", EXIT_INPUT) from exc
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _app_config(args) -> AppConfig:
    cfg = load_config(args.config)
    if getattr(args, "parser_endpoint", None):
        cfg = replace(cfg, parser_endpoint=args.parser_endpoint)
    if getattr(args, "rules", None):
        cfg = replace(cfg, rules_path=args.rules)
    if getattr(args, "base_iri", None):
        cfg = replace(cfg, base_iri=args.base_iri)
    return cfg


def _guess_format(path: Optional[str]) -> str:
    return "json-doc" if path and path.endswith(".json") else "ptb-lines"


def cmd_extract(args) -> int:
    cfg = _app_config(args)
    fmt_in = args.input_format or _guess_format(args.input)
    pcfg = PipelineConfig(
        input_format=fmt_in,
        output_format=args.format,
        do_clausal=not args.no_clausal,
        do_phrasal=not args.no_phrasal,
        rules_path=cfg.rules_path,
        parser_endpoint=cfg.parser_endpoint,
        parser_timeout=cfg.parser_timeout,
        base_iri=cfg.base_iri,
    )
    data = _read_input(args.input)
    if not data.strip() and args.input is None and not cfg.parser_endpoint:
        raise CliError("no input given and no parser endpoint configured", EXIT_CONFIG)
    if fmt_in == "text":
        if not cfg.parser_endpoint:
            raise CliError("raw text input needs a parser endpoint", EXIT_CONFIG)
        if not data.strip():
            raise CliError("empty text input", EXIT_INPUT)
        doc = document_from_text(data, pcfg, doc_id=args.input or "stdin")
    else:
        doc = load_document(data, fmt_in, doc_id=args.input or "stdin")
    _write_output(args.output, extract_serialized(doc, pcfg))
    return EXIT_OK


def cmd_query(args) -> int:
    if args.relation:
        try:
            relation = RhetoricalRelation.parse(args.relation)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_INPUT) from exc
    else:
        relation = relation_for_question(args.question)
        if relation is None:
            known = ", ".join(q for q, _ in QUESTION_RELATIONS)
            raise CliError(f"cannot map question to a relation; known openers: {known}", EXIT_INPUT)
    graph = read_graph(_read_input(args.input))
    hits = query(graph, relation, args.match)
    _write_output(args.output, "".join(format_proposition(p) + "\n" for p in hits))
    return EXIT_OK


def cmd_score(args) -> int:
    gold = load_gold(args.gold)
    if args.input:
        predicted = read_graph(_read_input(args.input))
    else:
        cfg = _app_config(args)
        predicted = run_pipeline(gold_document(gold), PipelineConfig(rules_path=cfg.rules_path))
    s = score(predicted, gold)
    report = {
        "precision": round(s.precision, 4),
        "recall": round(s.recall, 4),
        "matched": s.matched_predicted,
        "predicted": s.total_predicted,
        "gold": s.total_gold,
    }
    _write_output(args.output, json.dumps(report) + "\n")
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import serve

    cfg = _app_config(args)
    if args.host:
        cfg = replace(cfg, host=args.host)
    if args.port:
        cfg = replace(cfg, port=args.port)
    serve(cfg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="propgraph", description="Discourse-aware open information extraction.")
    p.add_argument("-v", "--verbose", action="store_true", help="log skipped sentences to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, output=True):
        sp.add_argument("--config", help="JSON config file (default: $PROPGRAPH_CONFIG)")
        sp.add_argument("--input", help="input file (default: stdin)")
        if output:
            sp.add_argument("--output", help="output file (default: stdout)")

    ex = sub.add_parser("extract", help="extract propositions from parsed or raw text")
    common(ex)
    ex.add_argument("--input-format", choices=INPUT_FORMATS, help="default: by extension, else ptb-lines")
    ex.add_argument("--format", choices=OUTPUT_FORMATS, default="rdfnl")
    ex.add_argument("--no-clausal", action="store_true", help="skip clausal disembedding")
    ex.add_argument("--no-phrasal", action="store_true", help="skip phrasal disembedding")
    ex.add_argument("--rules", help="rule/cue data file")
    ex.add_argument("--parser-endpoint", help="constituency parser URL for raw text")
    ex.add_argument("--base-iri", help="base IRI for N-Triples output")
    ex.set_defaults(func=cmd_extract)

    q = sub.add_parser("query", help="follow typed links from matching propositions")
    common(q)
    which = q.add_mutually_exclusive_group(required=True)
    which.add_argument("--relation", help="relation name, e.g. CONDITION")
    which.add_argument("--question", help='question opener, e.g. "under which circumstances ..."')
    q.add_argument("--match", required=True, help="case-insensitive substring of the source tuple")
    q.set_defaults(func=cmd_query)

    sc = sub.add_parser("score", help="precision/recall against a gold file")
    common(sc)
    sc.add_argument("--gold", required=True, help="gold JSON file")
    sc.add_argument("--rules", help="rule/cue data file")
    sc.set_defaults(func=cmd_score)

    sv = sub.add_parser("serve", help="run the HTTP extraction service")
    sv.add_argument("--config", help="JSON config file (default: $PROPGRAPH_CONFIG)")
    sv.add_argument("--host")
    sv.add_argument("--port", type=int)
    sv.add_argument("--rules", help="rule/cue data file")
    sv.add_argument("--parser-endpoint")
    sv.add_argument("--base-iri")
    sv.set_defaults(func=cmd_serve)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"propgraph: {exc}", file=sys.stderr)
        return exc.code
    except (ConfigError, RuleSetError, MissingInput) as exc:
        print(f"propgraph: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (
        SentenceParseError,
        DocumentDecodeError,
        FormatError,
        EmptyGold,
        ExtractionError,
        PipelineError,
        ParserClientError,
        ValueError,
        KeyError,
        OSError,
    ) as exc:
        print(f"propgraph: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
