"""Rule sets: ordered clausal transformation rules, cue tables and lexicons.

A rule set lives in a versioned JSON file. Schema (version 1)::

    {
      "version": 1,
      "lexicons":  {name: [word, ...]},
      "core_cues": [cue, ...],
      "cue_tables": {environment: {cue: RELATION} | "other-environment" | "@lexicon=RELATION"},
      "rules": [
        {"name": str, "priority": int >= 0 (unique), "environment": str,
         "pattern": tree pattern (see ``pattern.py``),
         "children": [{"edge": "core"|"context", "build": template}, ...],
         "cue": cue expression,
         "core_cues": bool (optional; when true a cue listed in the top-level
                               core_cues makes every child a core child)}
      ]
    }

Child templates::

    node X            the subtree bound to X
    remove X Y ...    X with the subtrees bound to Y ... deleted
    clause X Y        a new S made of X followed by Y (Y's children when Y is an S)
    conjuncts X L     one child per child of X labelled L

Cue expressions::

    yield X           lowercased yield of X
    prefix X Y        lowercased yield of X's children preceding its child Y
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping, Optional, Union

from ..text.tree import ParseTree, remove_nodes, yield_text
from .nodes import CONTEXT, CORE, RhetoricalRelation
from .pattern import Bindings, TreePattern

SUPPORTED_VERSIONS = (1,)
_BUILD_OPS = {"node": 1, "remove": None, "clause": 2, "conjuncts": 2}
_CUE_OPS = {"yield": 1, "prefix": 2}


class RuleSetError(ValueError):
    pass


class MalformedMatch(RuntimeError):
    """Bindings do not fit the tree they were applied to (a rule-pattern bug)."""


@dataclass(frozen=True)
class ChildTemplate:
    edge: str
    op: str
    args: tuple[str, ...]

    def build(self, b: Bindings) -> list[ParseTree]:
        # names after the first in "remove" may come from optional relations
        required = self.args[:1] if self.op in ("remove", "conjuncts") else self.args
        for name in required:
            if name not in b:
                raise MalformedMatch(f"template {self.op} refers to unbound {name!r}")
        first = b[self.args[0]]
        if self.op == "node":
            return [first]
        if self.op == "remove":
            out = remove_nodes(first, [b[a] for a in self.args[1:] if a in b])
            return [] if out is None else [out]
        if self.op == "clause":
            rest = b[self.args[1]]
            tail = rest.children if rest.label == "S" else (rest,)
            return [ParseTree("S", (first,) + tuple(tail))]
        if self.op == "conjuncts":
            return [c for c in first.children if c.label == self.args[1]]
        raise AssertionError(self.op)


@dataclass(frozen=True)
class CueExpr:
    op: Optional[str]
    args: tuple[str, ...] = ()

    def extract(self, b: Bindings) -> str:
        if self.op is None:
            return ""
        try:
            if self.op == "yield":
                return yield_text(b[self.args[0]]).lower()
            outer, stop = b[self.args[0]], b[self.args[1]]
        except KeyError as exc:
            raise MalformedMatch(f"cue expression refers to unbound {exc}") from None
        words: list[str] = []
        for c in outer.children:
            if c is stop:
                return " ".join(words).lower()
            words.extend(c.words())
        raise MalformedMatch("prefix stop node is not a child of the outer node")


@dataclass(frozen=True)
class TransformationRule:
    name: str
    priority: int
    environment: str
    pattern: TreePattern
    children: tuple[ChildTemplate, ...]
    cue: CueExpr
    core_cues: frozenset[str] = frozenset()

    def match(self, tree: ParseTree) -> Optional[Bindings]:
        return self.pattern.match_root(tree)


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[TransformationRule, ...]
    cue_tables: Mapping[str, Mapping[str, RhetoricalRelation]]
    core_cues: frozenset[str]
    lexicons: Mapping[str, frozenset[str]]
    version: int = 1

    def classify(self, cue: str, environment: str) -> RhetoricalRelation:
        table = self.cue_tables.get(environment, {})
        return table.get(cue.strip().lower(), RhetoricalRelation.UNKNOWN)

    def lexicon(self, name: str) -> frozenset[str]:
        return self.lexicons.get(name, frozenset())


def _parse_template(entry: Mapping, rule: str) -> ChildTemplate:
    edge = entry.get("edge")
    if edge not in (CORE, CONTEXT):
        raise RuleSetError(f"rule {rule}: child edge must be core or context, got {edge!r}")
    parts = str(entry.get("build", "")).split()
    if not parts or parts[0] not in _BUILD_OPS:
        raise RuleSetError(f"rule {rule}: unknown build template {entry.get('build')!r}")
    arity = _BUILD_OPS[parts[0]]
    if (arity is not None and len(parts) - 1 != arity) or len(parts) < 2:
        raise RuleSetError(f"rule {rule}: bad arity in {entry.get('build')!r}")
    return ChildTemplate(edge, parts[0], tuple(parts[1:]))


def _parse_cue(expr: str, rule: str) -> CueExpr:
    parts = (expr or "").split()
    if not parts:
        return CueExpr(None)
    if parts[0] not in _CUE_OPS or len(parts) - 1 != _CUE_OPS[parts[0]]:
        raise RuleSetError(f"rule {rule}: bad cue expression {expr!r}")
    return CueExpr(parts[0], tuple(parts[1:]))


def _resolve_tables(raw: Mapping, lexicons: Mapping[str, frozenset[str]]) -> dict[str, dict[str, RhetoricalRelation]]:
    out: dict[str, dict[str, RhetoricalRelation]] = {}

    def resolve(env: str, seen: tuple[str, ...]) -> dict[str, RhetoricalRelation]:
        if env in out:
            return out[env]
        if env in seen:
            raise RuleSetError(f"cyclic cue table alias at {env!r}")
        if env not in raw:
            raise RuleSetError(f"cue table alias to unknown environment {env!r}")
        entry = raw[env]
        if isinstance(entry, str) and entry.startswith("@"):
            name, _, rel = entry[1:].partition("=")
            if name not in lexicons:
                raise RuleSetError(f"cue table {env!r} refers to unknown lexicon {name!r}")
            table = {w: _relation(rel, env) for w in lexicons[name]}
        elif isinstance(entry, str):
            table = resolve(entry, seen + (env,))
        elif isinstance(entry, Mapping):
            table = {k.lower(): _relation(v, env) for k, v in entry.items()}
        else:
            raise RuleSetError(f"cue table {env!r} must be an object or alias")
        out[env] = table
        return table

    for env in raw:
        resolve(env, ())
    return out


def _relation(name: str, where: str) -> RhetoricalRelation:
    try:
        return RhetoricalRelation.parse(name)
    except ValueError as exc:
        raise RuleSetError(f"{where}: {exc}") from None


def build_ruleset(data: Mapping) -> RuleSet:
    version = data.get("version")
    if version not in SUPPORTED_VERSIONS:
        raise RuleSetError(f"unsupported rule set version {version!r}")
    lexicons = {k: frozenset(w.lower() for w in v) for k, v in data.get("lexicons", {}).items()}
    tables = _resolve_tables(data.get("cue_tables", {}), lexicons)
    core_cues = frozenset(c.lower() for c in data.get("core_cues", []))
    rules = []
    for entry in data.get("rules", []):
        name = entry.get("name") or "<unnamed>"
        prio = entry.get("priority")
        if not isinstance(prio, int) or prio < 0:
            raise RuleSetError(f"rule {name}: priority must be a non-negative integer")
        env = entry.get("environment", "")
        if env not in tables:
            raise RuleSetError(f"rule {name}: no cue table for environment {env!r}")
        try:
            pattern = TreePattern(entry["pattern"], lexicons)
        except (KeyError, ValueError) as exc:
            raise RuleSetError(f"rule {name}: {exc}") from exc
        children = tuple(_parse_template(c, name) for c in entry.get("children", []))
        if not children:
            raise RuleSetError(f"rule {name}: no child templates")
        rules.append(
            TransformationRule(
                name=name,
                priority=prio,
                environment=env,
                pattern=pattern,
                children=children,
                cue=_parse_cue(entry.get("cue", ""), name),
                core_cues=core_cues if entry.get("core_cues", False) else frozenset(),
            )
        )
    prios = [r.priority for r in rules]
    if len(set(prios)) != len(prios):
        raise RuleSetError("rule priorities must be unique")
    rules.sort(key=lambda r: r.priority)
    return RuleSet(tuple(rules), tables, core_cues, lexicons, version)


def load_ruleset(path: Union[str, Path, None] = None) -> RuleSet:
    """Load a rule set from ``path``, or the embedded default when ``path`` is None."""
    if path is None:
        return default_ruleset()
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise RuleSetError(f"cannot read rule set {path}: {exc}") from exc
    return build_ruleset(data)


@lru_cache(maxsize=1)
def default_ruleset() -> RuleSet:
    text = resources.files("propgraph.data").joinpath("rules.json").read_text(encoding="utf-8")
    return build_ruleset(json.loads(text))
