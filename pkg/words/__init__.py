"""Words, alphabets and word-set algebra."""

from words.word import (
    Alphabet,
    EMPTY,
    Ordering,
    Word,
    format_word,
    is_primitive,
    least_period,
    lex_compare,
    lex_leq,
    parse_word,
    prefix,
    rotations,
    suffix,
)
from words.algebra import concat_set

__all__ = [
    "Alphabet", "EMPTY", "Ordering", "Word", "concat_set", "format_word",
    "is_primitive", "least_period", "lex_compare", "lex_leq", "parse_word",
    "prefix", "rotations", "suffix",
]
