# this file only keeps the most common & critical types/utility functions
from .cfg import make_config
from .error import MzvError, NotExpressible, Res, unwrap
from .formal import FormalSum
from .index import (
    BinaryWord,
    MzvIndex,
    dual,
    enumerate_admissible,
    enumerate_hoffman,
    index_to_word,
    parse_index,
    weight,
    word_to_index,
)
from .logging import make_logger
from .types import Json

__all__ = [
    'BinaryWord',
    'FormalSum',
    'Json',
    'MzvError',
    'MzvIndex',
    'NotExpressible',
    'Res',
    'dual',
    'enumerate_admissible',
    'enumerate_hoffman',
    'index_to_word',
    'make_config',
    'make_logger',
    'parse_index',
    'unwrap',
    'weight',
    'word_to_index',
]
