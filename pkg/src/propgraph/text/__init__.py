from .client import (
    ParserClient,
    ParserClientError,
    ParserConnectionError,
    ParserTimeoutError,
    RemoteParseError,
    fetch_parses,
)
from .document import Document, DocumentDecodeError, SentenceParseError, load_document
from .tree import (
    EmptyInput,
    EmptyLabel,
    EmptyTree,
    ParseTree,
    PTBParseError,
    Token,
    UnbalancedBrackets,
    parse_ptb,
    parse_ptb_many,
    yield_text,
)

__all__ = [
    "Document",
    "DocumentDecodeError",
    "EmptyInput",
    "EmptyLabel",
    "EmptyTree",
    "ParseTree",
    "ParserClient",
    "ParserClientError",
    "ParserConnectionError",
    "ParserTimeoutError",
    "PTBParseError",
    "RemoteParseError",
    "SentenceParseError",
    "Token",
    "UnbalancedBrackets",
    "fetch_parses",
    "load_document",
    "parse_ptb",
    "parse_ptb_many",
    "yield_text",
]
