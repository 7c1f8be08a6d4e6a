import sys
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import pytest

from propgraph import Document, PipelineConfig, parse_ptb, run_pipeline
from propgraph.text.document import load_document

FIXTURES = Path(__file__).parent / "fixtures"
TREASURY_PTB = FIXTURES / "treasury.ptb"


@pytest.fixture(scope="session")
def treasury_doc() -> Document:
    return load_document(TREASURY_PTB.read_bytes(), doc_id="treasury")


@pytest.fixture(scope="session")
def treasury_tree(treasury_doc):
    return treasury_doc.sentences[0]


@pytest.fixture(scope="session")
def treasury_graph(treasury_doc):
    return run_pipeline(treasury_doc, PipelineConfig())


class _StubParser(BaseHTTPRequestHandler):
    """Answers POSTed text with canned parses keyed by the exact request body."""

    responses: dict = {}
    status = 200

    def do_POST(self):
        body = self.rfile.read(int(self.headers.get("Content-Length", 0))).decode("utf-8")
        cls = type(self)
        out = cls.responses.get(body.strip())
        if cls.status != 200 or out is None:
            self.send_response(cls.status if cls.status != 200 else 422)
            self.end_headers()
            return
        data = out.encode("utf-8")
        self.send_response(200)
        self.send_header("Content-Type", "text/plain")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, *args):
        pass


@pytest.fixture
def stub_parser():
    """A live HTTP parser stub; yields (url, handler class) so tests can set responses."""
    handler = type("Stub", (_StubParser,), {"responses": {}, "status": 200})
    server = ThreadingHTTPServer(("127.0.0.1", 0), handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield f"http://127.0.0.1:{server.server_address[1]}/parse", handler
    finally:
        server.shutdown()
        server.server_close()


def tree(s: str):
    return parse_ptb(s)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, (ok, label) in sorted(acceptance.RESULTS.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {label}")
