from .base import ConditionalModel, EchoModel, SEQUENCE_LEVEL, TOKEN_LEVEL
from .pairs import PairConstraint, TranslationPair, build_pairs, load_pairs, save_pairs
from .reference import ReferenceTranslator, train_reference
from .wire import ProcessAdapter, serve_stdio

__all__ = [
    "ConditionalModel",
    "EchoModel",
    "PairConstraint",
    "ProcessAdapter",
    "ReferenceTranslator",
    "SEQUENCE_LEVEL",
    "TOKEN_LEVEL",
    "TranslationPair",
    "build_pairs",
    "load_pairs",
    "save_pairs",
    "serve_stdio",
    "train_reference",
]
