from __future__ import annotations

import json
from dataclasses import dataclass
from typing import BinaryIO, Optional, Union

from .tree import ParseTree, PTBParseError, parse_ptb

FORMATS = ("ptb-lines", "json-doc")


class DocumentDecodeError(ValueError):
    pass


class SentenceParseError(ValueError):
    """A sentence record failed to parse; ``line`` is 1-based."""

    def __init__(self, line: int, cause: PTBParseError):
        super().__init__(f"line {line}: {cause}")
        self.line = line
        self.cause = cause


@dataclass(frozen=True)
class Document:
    id: str
    sentences: tuple[ParseTree, ...] = ()
    source_text: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.sentences, tuple):
            object.__setattr__(self, "sentences", tuple(self.sentences))

    def __len__(self):
        return len(self.sentences)


def _decode(data: Union[bytes, str]) -> str:
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DocumentDecodeError(f"input is not valid UTF-8: {exc}") from exc


def load_document(stream: Union[BinaryIO, bytes, str], format: str = "ptb-lines", doc_id: str = "doc") -> Document:
    if format not in FORMATS:
        raise ValueError(f"unknown document format {format!r}; expected one of {FORMATS}")
    raw = stream if isinstance(stream, (bytes, str)) else stream.read()
    text = _decode(raw)

    if format == "ptb-lines":
        sentences = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                sentences.append(parse_ptb(line))
            except PTBParseError as exc:
                raise SentenceParseError(lineno, exc) from exc
        return Document(doc_id, tuple(sentences))

    if not text.strip():
        return Document(doc_id)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentDecodeError(f"invalid json-doc: {exc}") from exc
    if not isinstance(obj, dict) or not isinstance(obj.get("sentences", []), list):
        raise DocumentDecodeError('json-doc must be an object with a "sentences" array')
    sentences = []
    # json-doc records are numbered by their position in the array
    for i, s in enumerate(obj.get("sentences", []), start=1):
        if not isinstance(s, str):
            raise DocumentDecodeError(f"sentence {i} is not a string")
        try:
            sentences.append(parse_ptb(s))
        except PTBParseError as exc:
            raise SentenceParseError(i, exc) from exc
    return Document(str(obj.get("id", doc_id)), tuple(sentences), obj.get("text"))
