"""Constituency trees over PTB tokens and a reader for bracketed notation."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

# PTB escapes rendered back to their surface form in yields.
PTB_ESCAPES = {
    "-LRB-": "(",
    "-RRB-": ")",
    "-LSB-": "[",
    "-RSB-": "]",
    "-LCB-": "{",
    "-RCB-": "}",
}

ROOT_LABELS = ("ROOT", "TOP", "")


class PTBParseError(ValueError):
    """Malformed bracketed input. ``offset`` is a 0-based character offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnbalancedBrackets(PTBParseError):
    pass


class EmptyLabel(PTBParseError):
    pass


class EmptyInput(PTBParseError):
    pass


class EmptyTree(ValueError):
    pass


@dataclass(frozen=True)
class Token:
    text: str
    index: int

    def __post_init__(self):
        if not self.text or any(c.isspace() for c in self.text):
            raise ValueError(f"invalid token text {self.text!r}")


@dataclass(frozen=True)
class ParseTree:
    label: str
    children: tuple[ParseTree, ...] = ()
    token: Optional[Token] = field(default=None)

    def __post_init__(self):
        if not self.label:
            raise ValueError("tree label must be non-empty")
        if self.token is not None and self.children:
            raise ValueError("a node with a token cannot have children")
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))

    @classmethod
    def leaf(cls, label: str, word: str, index: int = 0) -> ParseTree:
        return cls(label, (), Token(word, index))

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def is_preterminal(self) -> bool:
        return self.token is not None

    @property
    def word(self) -> Optional[str]:
        return self.token.text if self.token is not None else None

    def leaves(self) -> list[ParseTree]:
        return [n for n in self.preorder() if n.token is not None]

    def tokens(self) -> list[Token]:
        return [n.token for n in self.leaves()]

    def words(self) -> list[str]:
        return [t.text for t in self.tokens()]

    def __len__(self) -> int:
        return len(self.leaves())

    def preorder(self) -> Iterator[ParseTree]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def to_string(self) -> str:
        """Canonical single-space bracketing."""
        if self.token is not None:
            return f"({self.label} {self.token.text})"
        if not self.children:
            return f"({self.label})"
        return "(" + self.label + " " + " ".join(c.to_string() for c in self.children) + ")"

    __str__ = to_string

    def pretty(self, indent: int = 0) -> str:
        pad = "  " * indent
        if self.token is not None or not self.children:
            return pad + self.to_string()
        inner = "\n".join(c.pretty(indent + 1) for c in self.children)
        return f"{pad}({self.label}\n{inner})"


def reindex(tree: ParseTree) -> ParseTree:
    """Renumber leaf tokens consecutively from 0 in left-to-right order."""
    counter = iter(range(len(tree)))

    def rebuild(node: ParseTree) -> ParseTree:
        if node.token is not None:
            return ParseTree(node.label, (), Token(node.token.text, next(counter)))
        return ParseTree(node.label, tuple(rebuild(c) for c in node.children))

    return rebuild(tree)


def prune(tree: ParseTree) -> Optional[ParseTree]:
    """Drop internal nodes left without any leaf token."""
    if tree.token is not None:
        return tree
    kids = tuple(k for k in (prune(c) for c in tree.children) if k is not None)
    if not kids:
        return None
    if len(kids) == len(tree.children) and all(a is b for a, b in zip(kids, tree.children)):
        return tree
    return ParseTree(tree.label, kids)


def rewrite(tree: ParseTree, fn: Callable[[ParseTree], Optional[Iterable[ParseTree]]]) -> ParseTree:
    """Rebuild ``tree`` top-down. ``fn`` returns ``None`` to keep a node as is
    (and recurse into it) or a sequence of replacement nodes (possibly empty)."""

    def visit(node: ParseTree) -> list[ParseTree]:
        repl = fn(node)
        if repl is not None:
            return list(repl)
        if node.token is not None or not node.children:
            return [node]
        kids: list[ParseTree] = []
        for c in node.children:
            kids.extend(visit(c))
        if len(kids) == len(node.children) and all(a is b for a, b in zip(kids, node.children)):
            return [node]
        return [ParseTree(node.label, tuple(kids))]

    out = visit(tree)
    if len(out) != 1:
        raise ValueError("rewrite must leave exactly one root")
    return out[0]


def remove_nodes(tree: ParseTree, targets: Iterable[ParseTree]) -> Optional[ParseTree]:
    ids = {id(t) for t in targets}
    if id(tree) in ids:
        return None
    pruned = rewrite(tree, lambda n: () if id(n) in ids else None)
    return prune(pruned)


def replace_node(tree: ParseTree, target: ParseTree, replacement: Iterable[ParseTree]) -> ParseTree:
    repl = list(replacement)
    if target is tree:
        if len(repl) != 1:
            raise ValueError("cannot replace the root with several nodes")
        return repl[0]
    return rewrite(tree, lambda n: repl if n is target else None)


def parent_map(tree: ParseTree) -> dict[int, ParseTree]:
    parents: dict[int, ParseTree] = {}
    for node in tree.preorder():
        for c in node.children:
            parents[id(c)] = node
    return parents


def contains_node(tree: ParseTree, node: ParseTree) -> bool:
    return any(n is node for n in tree.preorder())


# --- reading ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")


def _lex(s: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start()) for m in _TOKEN_RE.finditer(s)]


def _read(tokens: list[tuple[str, int]], pos: int, end_offset: int) -> tuple[ParseTree, int, bool]:
    """Read one bracketed node starting at ``tokens[pos] == '('``.

    Returns the tree, next position, and whether the label was empty (only
    tolerated for an outermost wrapper)."""
    open_offset = tokens[pos][1]
    pos += 1
    if pos >= len(tokens):
        raise UnbalancedBrackets("unclosed bracket", end_offset)
    tok, off = tokens[pos]
    label = ""
    if tok not in ("(", ")"):
        label = tok
        pos += 1
    children: list[ParseTree] = []
    word: Optional[str] = None
    while True:
        if pos >= len(tokens):
            raise UnbalancedBrackets("unclosed bracket", end_offset)
        tok, off = tokens[pos]
        if tok == ")":
            pos += 1
            break
        if tok == "(":
            child, pos, child_empty = _read(tokens, pos, end_offset)
            if child_empty:
                raise EmptyLabel("empty label", off)
            if word is not None:
                raise PTBParseError("word followed by subtree", off)
            children.append(child)
        else:
            if word is not None or children:
                raise PTBParseError("unexpected word", off)
            word = tok
            pos += 1
    if not label:
        if word is not None or len(children) != 1:
            raise EmptyLabel("empty label", open_offset)
        return children[0], pos, True
    if word is not None:
        return ParseTree(label, (), Token(word, 0)), pos, False
    if not children:
        raise PTBParseError("empty constituent", open_offset)
    return ParseTree(label, tuple(children)), pos, False


def _strip_root(tree: ParseTree) -> ParseTree:
    while tree.label in ROOT_LABELS and tree.token is None and len(tree.children) == 1:
        tree = tree.children[0]
    return tree


def _read_all(s: str) -> Iterator[ParseTree]:
    tokens = _lex(s)
    pos = 0
    while pos < len(tokens):
        tok, off = tokens[pos]
        if tok != "(":
            if tok == ")":
                raise UnbalancedBrackets("unmatched closing bracket", off)
            raise PTBParseError("text outside brackets", off)
        tree, pos, _ = _read(tokens, pos, len(s))
        yield reindex(_strip_root(tree))


def parse_ptb(s: str) -> ParseTree:
    """Parse a single bracketed tree. ROOT/TOP and empty-label wrappers are stripped."""
    if not s or not s.strip():
        raise EmptyInput("empty input", 0)
    trees = _read_all(s)
    tree = next(trees)
    extra = next(trees, None)
    if extra is not None:
        raise PTBParseError("more than one tree", _second_tree_offset(s))
    return tree


def parse_ptb_many(s: str) -> list[ParseTree]:
    """Parse zero or more consecutive bracketed trees."""
    return list(_read_all(s))


def _second_tree_offset(s: str) -> int:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            if depth == 0 and i > s.index("("):
                return i
            depth += 1
        elif ch == ")":
            depth -= 1
    return len(s)


def yield_text(t: ParseTree) -> str:
    """Leaf tokens joined by single spaces, with PTB bracket escapes undone."""
    words = t.words()
    if not words:
        raise EmptyTree(f"no leaf tokens under {t.label}")
    return " ".join(PTB_ESCAPES.get(w, w) for w in words)


PUNCT_TAGS = frozenset({",", ".", ":", "``", "''", "-LRB-", "-RRB-"})


def is_punct(label: str) -> bool:
    return label in PUNCT_TAGS
