from .cli import main
from .config import AppConfig, ConfigError, load_config
from .extract import MissingInput, document_from_sentences, document_from_text, extract_serialized
from .query import QUESTION_RELATIONS, query, relation_for_question
from .scoring import EmptyGold, GoldRecord, Score, gold_document, head, load_gold, score, tuple_matches

__all__ = [
    "main",
    "AppConfig",
    "ConfigError",
    "load_config",
    "MissingInput",
    "document_from_sentences",
    "document_from_text",
    "extract_serialized",
    "QUESTION_RELATIONS",
    "query",
    "relation_for_question",
    "EmptyGold",
    "GoldRecord",
    "Score",
    "gold_document",
    "head",
    "load_gold",
    "score",
    "tuple_matches",
]
