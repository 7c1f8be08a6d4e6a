"""RDF-NL: the tab-separated, indentation-structured proposition listing.

Grammar::

    document    := sentence*
    sentence    := TEXT NL NL proposition*
    proposition := "#" ID TAB CL TAB SUBJ TAB REL [TAB OBJ] NL context* NL
    context     := TAB ("S:" RELATION TAB PHRASE | "L:" RELATION TAB "#" ID) NL

Fields never contain tabs or newlines. The reader also tolerates missing
blank lines, stray spaces around fields and, on lines without any tab,
runs of two or more spaces as the separator (as in typeset listings).
"""

from __future__ import annotations

import re

from ..discourse.nodes import RhetoricalRelation, SimpleContext
from ..graph import LinkedContext, Proposition, PropositionGraph, RelationalTuple, SentenceGroup


class FormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DanglingReference(FormatError):
    pass


_HEADER = re.compile(r"^#(\d+)(\t| {2,})")
_SPACES = re.compile(r" {2,}")


def _fields(line: str) -> list[str]:
    parts = line.split("\t") if "\t" in line else _SPACES.split(line)
    return [f.strip() for f in parts if f.strip()]
_CONTEXT = re.compile(r"^([SL]):([A-Za-z_]+)$")


def _proposition_lines(p: Proposition) -> list[str]:
    fields = [f"#{p.id}", str(p.cl), p.t.arg_subj, p.t.rel]
    if p.t.arg_obj:
        fields.append(p.t.arg_obj)
    lines = ["\t".join(fields)]
    lines += [f"\tS:{c.relation.value}\t{c.phrase}" for c in p.simple]
    lines += [f"\tL:{c.relation.value}\t#{c.target_id}" for c in p.linked]
    return lines


def format_proposition(p: Proposition) -> str:
    return "\n".join(_proposition_lines(p))


def emit_rdfnl(g: PropositionGraph) -> str:
    out: list[str] = []
    for s in g.sentences:
        out.append(s.text)
        out.append("")
        for p in s.propositions:
            out.extend(_proposition_lines(p))
            out.append("")
    return "\n".join(out) + "\n" if out else ""


def parse_rdfnl(text: str) -> PropositionGraph:
    sentences: list[tuple[str, list[dict]]] = []
    current: dict | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        if raw[0] in "\t ":
            if current is None:
                raise FormatError("context line outside a proposition", lineno)
            fields = _fields(raw.strip())
            if len(fields) != 2:
                raise FormatError(f"context line needs a type and a value, got {fields}", lineno)
            m = _CONTEXT.match(fields[0])
            if not m:
                raise FormatError(f"bad context type {fields[0]!r}", lineno)
            try:
                relation = RhetoricalRelation.parse(m.group(2))
            except ValueError as exc:
                raise FormatError(str(exc), lineno) from None
            if m.group(1) == "S":
                current["simple"].append(SimpleContext(fields[1], relation))
            else:
                if not re.fullmatch(r"#\d+", fields[1]):
                    raise FormatError(f"bad link target {fields[1]!r}", lineno)
                current["linked"].append((int(fields[1][1:]), relation, lineno))
            continue
        if _HEADER.match(raw):
            if not sentences:
                raise FormatError("proposition before any sentence line", lineno)
            fields = _fields(raw)
            if len(fields) not in (4, 5) or not fields[1].isdigit():
                raise FormatError(f"proposition line needs 4 or 5 fields, got {len(fields)}", lineno)
            current = {
                "id": int(fields[0][1:]),
                "cl": int(fields[1]),
                "t": RelationalTuple(fields[3], fields[2], fields[4] if len(fields) == 5 else ""),
                "simple": [],
                "linked": [],
                "line": lineno,
            }
            sentences[-1][1].append(current)
            continue
        sentences.append((raw.strip(), []))
        current = None

    known = {p["id"] for _, props in sentences for p in props}
    groups = []
    for text_line, props in sentences:
        out = []
        for p in props:
            linked = []
            for target, rel, lineno in p["linked"]:
                if target not in known:
                    raise DanglingReference(f"reference to unknown proposition #{target}", lineno)
                linked.append(LinkedContext(target, rel))
            out.append(Proposition(p["id"], p["cl"], p["t"], tuple(p["simple"]), tuple(linked)))
        groups.append(SentenceGroup(text_line, tuple(out)))
    return PropositionGraph(tuple(groups))
