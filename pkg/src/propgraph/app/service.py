"""Stateless HTTP extraction service.

POST /extract with a JSON body, either::

    {"text": "raw text", "options": {...}}        # needs a parser endpoint
    {"sentences": ["(S ...)", ...], "options": {...}}

options: format (rdfnl|ntriples|json), do_clausal, do_phrasal. The response
body is the serialization, byte-identical to the CLI's output. Errors are
JSON objects {"error": kind, "detail": message}.
"""

from __future__ import annotations

import json

from fastapi import Depends, FastAPI, Request
from fastapi.responses import JSONResponse, Response

from ..discourse.rules import RuleSetError
from ..pipeline import OUTPUT_FORMATS, PipelineConfig, PipelineError
from ..text.client import ParserClientError
from ..text.document import SentenceParseError
from .config import AppConfig
from .extract import MissingInput, document_from_sentences, document_from_text, extract_serialized

MEDIA_TYPES = {
    "rdfnl": "text/plain; charset=utf-8",
    "ntriples": "application/n-triples",
    "json": "application/json",
}
_OPTIONS = {"format": str, "do_clausal": bool, "do_phrasal": bool}


class BadRequest(ValueError):
    pass


def _error(status: int, kind: str, detail: str) -> JSONResponse:
    return JSONResponse({"error": kind, "detail": detail}, status_code=status)


def _pipeline_config(app_cfg: AppConfig, options: dict) -> PipelineConfig:
    if not isinstance(options, dict):
        raise BadRequest('"options" must be an object')
    for key, value in options.items():
        if key not in _OPTIONS:
            raise BadRequest(f"unknown option {key!r}")
        if not isinstance(value, _OPTIONS[key]):
            raise BadRequest(f"option {key!r} must be {_OPTIONS[key].__name__}")
    fmt = options.get("format", "rdfnl")
    if fmt not in OUTPUT_FORMATS:
        raise BadRequest(f"format must be one of {OUTPUT_FORMATS}")
    return PipelineConfig(
        output_format=fmt,
        do_clausal=options.get("do_clausal", True),
        do_phrasal=options.get("do_phrasal", True),
        rules_path=app_cfg.rules_path,
        parser_endpoint=app_cfg.parser_endpoint,
        parser_timeout=app_cfg.parser_timeout,
        base_iri=app_cfg.base_iri,
    )


async def _raw_body(request: Request) -> bytes:
    return await request.body()


def _parse_body(raw: bytes) -> dict:
    if not raw.strip():
        raise BadRequest("empty request body")
    try:
        body = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise BadRequest(f"body is not valid JSON: {exc}") from exc
    if not isinstance(body, dict):
        raise BadRequest("body must be a JSON object")
    has_text, has_sents = "text" in body, "sentences" in body
    if has_text == has_sents:
        raise BadRequest('body needs exactly one of "text" or "sentences"')
    unknown = set(body) - {"text", "sentences", "options"}
    if unknown:
        raise BadRequest(f"unknown fields {sorted(unknown)}")
    if has_text and (not isinstance(body["text"], str) or not body["text"].strip()):
        raise BadRequest('"text" must be a non-empty string')
    if has_sents:
        sents = body["sentences"]
        if not isinstance(sents, list) or not all(isinstance(s, str) for s in sents):
            raise BadRequest('"sentences" must be an array of strings')
    return body


def create_app(cfg: AppConfig | None = None) -> FastAPI:
    cfg = cfg or AppConfig()
    base = PipelineConfig(rules_path=cfg.rules_path)
    ruleset = base.ruleset()  # fail at startup on a bad rule file
    app = FastAPI(title="propgraph", version="0.1.0")

    @app.get("/health")
    def health():
        return {"status": "ok", "parser_endpoint": bool(cfg.parser_endpoint)}

    # Plain def: FastAPI runs it in a worker thread, the pipeline is CPU bound.
    @app.post("/extract")
    def extract(body: bytes = Depends(_raw_body)):
        try:
            req = _parse_body(body)
            pcfg = _pipeline_config(cfg, req.get("options", {}))
            if "sentences" in req:
                doc = document_from_sentences(req["sentences"], doc_id="request")
            else:
                doc = document_from_text(req["text"], pcfg, doc_id="request")
            out = extract_serialized(doc, pcfg, ruleset)
        except BadRequest as exc:
            return _error(400, "bad_request", str(exc))
        except SentenceParseError as exc:
            return _error(400, "parse_error", str(exc))
        except MissingInput as exc:
            return _error(400, "missing_input", str(exc))
        except ParserClientError as exc:
            return _error(502, "parser_unavailable", str(exc))
        except (PipelineError, RuleSetError) as exc:
            return _error(500, "pipeline_error", str(exc))
        return Response(content=out.encode("utf-8"), media_type=MEDIA_TYPES[pcfg.output_format])

    return app


def serve(cfg: AppConfig) -> None:
    import uvicorn

    uvicorn.run(create_app(cfg), host=cfg.host, port=cfg.port)
