"""Application configuration: JSON file plus environment overrides.

Config file keys (all optional)::

    {"parser_endpoint": "http://localhost:9000/parse",
     "parser_timeout": 10.0,
     "rules_path": "rules.json",
     "base_iri": "http://example.org/propgraph/",
     "host": "127.0.0.1",
     "port": 8080}

Environment variables win over the file: PROPGRAPH_PARSER_ENDPOINT,
PROPGRAPH_PARSER_TIMEOUT, PROPGRAPH_PORT. PROPGRAPH_CONFIG names the file
when no path is passed explicitly.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from ..serialize.ntriples import DEFAULT_BASE_IRI
from ..text.client import ENV_ENDPOINT, ENV_TIMEOUT

ENV_CONFIG = "PROPGRAPH_CONFIG"
ENV_PORT = "PROPGRAPH_PORT"
_KEYS = {"parser_endpoint", "parser_timeout", "rules_path", "base_iri", "host", "port"}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class AppConfig:
    parser_endpoint: Optional[str] = None
    parser_timeout: float = 10.0
    rules_path: Optional[str] = None
    base_iri: str = DEFAULT_BASE_IRI
    host: str = "127.0.0.1"
    port: int = 8080


def load_config(path: Optional[str] = None, env: Optional[dict] = None) -> AppConfig:
    env = os.environ if env is None else env
    path = path or env.get(ENV_CONFIG)
    cfg = AppConfig()
    if path:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(data) - _KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if data.get("rules_path") and not Path(data["rules_path"]).is_absolute():
            data["rules_path"] = str(Path(path).parent / data["rules_path"])
        cfg = replace(cfg, **data)
    try:
        if env.get(ENV_ENDPOINT):
            cfg = replace(cfg, parser_endpoint=env[ENV_ENDPOINT])
        if env.get(ENV_TIMEOUT):
            cfg = replace(cfg, parser_timeout=float(env[ENV_TIMEOUT]))
        if env.get(ENV_PORT):
            cfg = replace(cfg, port=int(env[ENV_PORT]))
    except ValueError as exc:
        raise ConfigError(f"bad environment override: {exc}") from exc
    return cfg
