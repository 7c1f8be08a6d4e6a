"""A small tregex-style pattern language over ``ParseTree``.

Node descriptions::

    NP            label equality
    S|SINV        label alternation
    /^VB/         label regex
    __            any node
    IN{if,unless} preterminal whose word (case-insensitive) is in the set
    IN!{that}     preterminal whose word is not in the set
    {@name}       word set taken from a named lexicon
    !NP           negated description
    X=name        bind the matched node

Relations (each applies to the node at the head of its expression)::

    A < B      B is a child of A
    A <, B     B is the first child of A
    A <- B     B is the last child of A
    A << B     B is a proper descendant of A
    A > B      B is the parent of A
    A >> B     B is an ancestor of A
    A $+ B     B is the sister immediately right of A
    A $- B     B is the sister immediately left of A
    A $++ B    B is some sister right of A
    A $-- B    B is some sister left of A
    A <+(L) B  B descends from A through intermediate nodes all matching L

Prefix a relation with ``!`` to forbid it or ``?`` to make it optional.
Parentheses group a sub-expression: ``S < (VP < NP=obj)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

from ..text.tree import ParseTree

Bindings = dict[str, ParseTree]


class PatternSyntaxError(ValueError):
    def __init__(self, message: str, source: str, pos: int):
        super().__init__(f"{message} at {pos} in pattern {source!r}")
        self.pos = pos


@dataclass(frozen=True)
class NodeDesc:
    labels: Optional[frozenset[str]] = None  # None: any label
    regex: Optional[re.Pattern] = None
    words: Optional[frozenset[str]] = None
    words_negated: bool = False
    negated: bool = False
    name: Optional[str] = None

    def satisfied_by(self, node: ParseTree) -> bool:
        ok = True
        if self.labels is not None:
            ok = node.label in self.labels
        elif self.regex is not None:
            ok = self.regex.search(node.label) is not None
        if ok and self.words is not None:
            if node.token is None:
                ok = False
            else:
                ok = (node.token.text.lower() in self.words) != self.words_negated
        return ok != self.negated


@dataclass(frozen=True)
class Relation:
    op: str
    target: "NodeExpr"
    negated: bool = False
    optional: bool = False
    chain: Optional[NodeDesc] = None


@dataclass(frozen=True)
class NodeExpr:
    desc: NodeDesc
    relations: tuple[Relation, ...] = field(default=())


_REL_OPS = ("<+(", "<<", "<,", "<-", "<", ">>", ">", "$++", "$--", "$+", "$-")
_LABEL_RE = re.compile(r"[^\s(){}|=!/]+")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class _Parser:
    def __init__(self, source: str, lexicons: Mapping[str, frozenset[str]]):
        self.s = source
        self.i = 0
        self.lexicons = lexicons

    def error(self, msg: str):
        raise PatternSyntaxError(msg, self.s, self.i)

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self, lit: str) -> bool:
        return self.s.startswith(lit, self.i)

    def parse(self) -> NodeExpr:
        self.ws()
        expr = self.expr()
        self.ws()
        if self.i != len(self.s):
            self.error("unexpected trailing input")
        return expr

    def expr(self) -> NodeExpr:
        self.ws()
        if self.peek("("):
            self.i += 1
            inner = self.expr()
            self.ws()
            if not self.peek(")"):
                self.error("expected ')'")
            self.i += 1
            head_desc, rels = inner.desc, list(inner.relations)
        else:
            head_desc, rels = self.desc(), []
        while True:
            self.ws()
            rel = self.relation()
            if rel is None:
                break
            rels.append(rel)
        return NodeExpr(head_desc, tuple(rels))

    def relation(self) -> Optional[Relation]:
        start = self.i
        negated = optional = False
        if self.peek("!") and any(self.s.startswith(op, self.i + 1) for op in _REL_OPS):
            negated = True
            self.i += 1
        elif self.peek("?"):
            optional = True
            self.i += 1
        for op in _REL_OPS:
            if self.peek(op):
                self.i += len(op)
                chain = None
                if op == "<+(":
                    chain = self.desc()
                    if not self.peek(")"):
                        self.error("expected ')' after chain label")
                    self.i += 1
                    op = "<+"
                self.ws()
                target = self.term()
                return Relation(op, target, negated, optional, chain)
        if negated or optional:
            self.error("expected relation operator")
        self.i = start
        return None

    def term(self) -> NodeExpr:
        if self.peek("("):
            return self.expr_paren()
        return NodeExpr(self.desc())

    def expr_paren(self) -> NodeExpr:
        self.i += 1
        inner = self.expr()
        self.ws()
        if not self.peek(")"):
            self.error("expected ')'")
        self.i += 1
        return inner

    def desc(self) -> NodeDesc:
        self.ws()
        negated = False
        if self.peek("!"):
            negated = True
            self.i += 1
        labels = regex = None
        if self.peek("__"):
            self.i += 2
        elif self.peek("/"):
            end = self.s.find("/", self.i + 1)
            if end < 0:
                self.error("unterminated regex")
            regex = re.compile(self.s[self.i + 1 : end])
            self.i = end + 1
        elif self.peek("{"):
            pass
        else:
            parts = []
            while True:
                m = _LABEL_RE.match(self.s, self.i)
                if not m or m.group().startswith(("<", ">", "$", "?")):
                    self.error("expected node label")
                parts.append(m.group())
                self.i = m.end()
                if not self.peek("|"):
                    break
                self.i += 1
            labels = frozenset(parts)
        words = None
        words_negated = False
        if self.peek("!{"):
            words_negated = True
            self.i += 1
        if self.peek("{"):
            end = self.s.find("}", self.i)
            if end < 0:
                self.error("unterminated word set")
            items = [w.strip().lower() for w in self.s[self.i + 1 : end].split(",") if w.strip()]
            collected: set[str] = set()
            for w in items:
                if w.startswith("@"):
                    if w[1:] not in self.lexicons:
                        self.error(f"unknown lexicon {w[1:]!r}")
                    collected |= self.lexicons[w[1:]]
                else:
                    collected.add(w)
            words = frozenset(collected)
            self.i = end + 1
        elif words_negated:
            self.error("expected '{' after '!'")
        name = None
        if self.peek("="):
            self.i += 1
            m = _NAME_RE.match(self.s, self.i)
            if not m:
                self.error("expected binding name")
            name = m.group()
            self.i = m.end()
        return NodeDesc(labels, regex, words, words_negated, negated, name)


class _Context:
    def __init__(self, root: ParseTree):
        self.root = root
        self.parent: dict[int, ParseTree] = {}
        for node in root.preorder():
            for c in node.children:
                self.parent[id(c)] = node

    def siblings(self, node: ParseTree) -> tuple[tuple[ParseTree, ...], int]:
        par = self.parent.get(id(node))
        if par is None:
            return (node,), 0
        for i, c in enumerate(par.children):
            if c is node:
                return par.children, i
        raise AssertionError("node not under its parent")

    def candidates(self, rel: Relation, node: ParseTree) -> Iterator[ParseTree]:
        op = rel.op
        if op == "<":
            yield from node.children
        elif op == "<,":
            if node.children:
                yield node.children[0]
        elif op == "<-":
            if node.children:
                yield node.children[-1]
        elif op == "<<":
            it = node.preorder()
            next(it)
            yield from it
        elif op == ">":
            par = self.parent.get(id(node))
            if par is not None:
                yield par
        elif op == ">>":
            par = self.parent.get(id(node))
            while par is not None:
                yield par
                par = self.parent.get(id(par))
        elif op in ("$+", "$-", "$++", "$--"):
            sibs, i = self.siblings(node)
            if op == "$+":
                if i + 1 < len(sibs):
                    yield sibs[i + 1]
            elif op == "$-":
                if i > 0:
                    yield sibs[i - 1]
            elif op == "$++":
                yield from sibs[i + 1 :]
            else:
                yield from reversed(sibs[:i])
        elif op == "<+":
            yield from self._chain(node, rel.chain)
        else:
            raise AssertionError(op)

    def _chain(self, node: ParseTree, link: NodeDesc) -> Iterator[ParseTree]:
        for c in node.children:
            yield c
            if link.satisfied_by(c):
                yield from self._chain(c, link)


def _match(ctx: _Context, expr: NodeExpr, node: ParseTree, b: Bindings) -> Iterator[Bindings]:
    d = expr.desc
    if not d.satisfied_by(node):
        return
    if d.name is not None:
        bound = b.get(d.name)
        if bound is not None and bound is not node:
            return
        b = {**b, d.name: node}
    yield from _relations(ctx, expr.relations, 0, node, b)


def _relations(ctx: _Context, rels: tuple[Relation, ...], k: int, node: ParseTree, b: Bindings) -> Iterator[Bindings]:
    if k == len(rels):
        yield b
        return
    rel = rels[k]
    if rel.negated:
        for cand in ctx.candidates(rel, node):
            if next(_match(ctx, rel.target, cand, b), None) is not None:
                return
        yield from _relations(ctx, rels, k + 1, node, b)
        return
    found = False
    for cand in ctx.candidates(rel, node):
        for b2 in _match(ctx, rel.target, cand, b):
            found = True
            yield from _relations(ctx, rels, k + 1, node, b2)
    if rel.optional and not found:
        yield from _relations(ctx, rels, k + 1, node, b)


class TreePattern:
    def __init__(self, source: str, lexicons: Optional[Mapping[str, frozenset[str]]] = None):
        self.source = source
        self.expr = _Parser(source, lexicons or {}).parse()

    def __repr__(self):
        return f"TreePattern({self.source!r})"

    def match_root(self, tree: ParseTree) -> Optional[Bindings]:
        """First solution with the pattern head anchored at ``tree``'s root."""
        ctx = _Context(tree)
        return next(_match(ctx, self.expr, tree, {}), None)

    def finditer(self, tree: ParseTree) -> Iterator[tuple[ParseTree, Bindings]]:
        """Every node (preorder) at which the pattern matches, with its first solution."""
        ctx = _Context(tree)
        for node in tree.preorder():
            b = next(_match(ctx, self.expr, node, {}), None)
            if b is not None:
                yield node, b

    def matches(self, tree: ParseTree) -> bool:
        return next(self.finditer(tree), None) is not None
