"""HTTP client for an external constituency-parser service.

The service receives plain text by POST and answers with one bracketed tree
per detected sentence (trees may span several lines).
"""

from __future__ import annotations

import os
import threading
from typing import Optional

import httpx

from .tree import ParseTree, PTBParseError, parse_ptb_many

ENV_ENDPOINT = "PROPGRAPH_PARSER_ENDPOINT"
ENV_TIMEOUT = "PROPGRAPH_PARSER_TIMEOUT"


class ParserClientError(Exception):
    retryable = True


class ParserConnectionError(ParserClientError, ConnectionError):
    pass


class ParserTimeoutError(ParserClientError, TimeoutError):
    pass


class RemoteParseError(ParserClientError):
    pass


class ParserClient:
    def __init__(self, endpoint: str, timeout: float = 10.0, max_in_flight: int = 4, transport=None):
        if not endpoint:
            raise ValueError("parser endpoint is required")
        self.endpoint = endpoint
        self.timeout = timeout
        self._slots = threading.BoundedSemaphore(max_in_flight)
        self._transport = transport

    @classmethod
    def from_env(cls, endpoint: Optional[str] = None, timeout: Optional[float] = None, **kw) -> Optional["ParserClient"]:
        endpoint = os.environ.get(ENV_ENDPOINT) or endpoint
        if not endpoint:
            return None
        if os.environ.get(ENV_TIMEOUT):
            timeout = float(os.environ[ENV_TIMEOUT])
        return cls(endpoint, timeout if timeout is not None else 10.0, **kw)

    def parse(self, text: str) -> list[ParseTree]:
        with self._slots:
            try:
                with httpx.Client(timeout=self.timeout, transport=self._transport) as http:
                    resp = http.post(
                        self.endpoint,
                        content=text.encode("utf-8"),
                        headers={"Content-Type": "text/plain; charset=utf-8"},
                    )
            except httpx.TimeoutException as exc:
                raise ParserTimeoutError(f"parser at {self.endpoint} timed out") from exc
            except httpx.TransportError as exc:
                raise ParserConnectionError(f"cannot reach parser at {self.endpoint}: {exc}") from exc
        if resp.status_code != 200:
            raise RemoteParseError(f"parser answered HTTP {resp.status_code}")
        try:
            trees = parse_ptb_many(resp.text)
        except PTBParseError as exc:
            raise RemoteParseError(f"unreadable parser response: {exc}") from exc
        if not trees:
            raise RemoteParseError("parser returned no trees")
        return trees


def fetch_parses(client: ParserClient, text: str) -> list[ParseTree]:
    if not text or not text.strip():
        raise ValueError("text must be non-empty")
    return client.parse(text)
