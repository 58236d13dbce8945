"""
Words over a finite alphabet.

A word is a plain tuple of small integers; the empty tuple is the empty word.
Tuples are immutable and hashable, so words can be shared across threads and
used as dictionary keys without copying.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterator, List, Optional, Tuple

from utils.errors import ValidationError
from words.rules import validate_alphabet_size, validate_cut, validate_symbols

Word = Tuple[int, ...]

EMPTY: Word = ()


@dataclass(frozen=True)
class Alphabet:
    """Alphabet {0, ..., size-1}."""

    size: int

    def __post_init__(self):
        validate_alphabet_size(self.size)

    @property
    def symbols(self) -> range:
        return range(self.size)

    def validate(self, word: Word) -> None:
        """Raise AlphabetMismatch if word uses a symbol outside this alphabet."""
        validate_symbols(word, self.size)

    def words(self, n: int) -> Iterator[Word]:
        """All words of length n in lexicographic order."""
        return product(range(self.size), repeat=n)


class Ordering(Enum):
    """Result of a prefix-tolerant lexicographic comparison."""

    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    PREFIX = "prefix"


def lex_compare(u: Word, v: Word, alphabet: Optional[Alphabet] = None) -> Ordering:
    """
    Compare two words lexicographically on their shared length.

    The words are truncated to min(|u|, |v|). If they differ there, the first
    differing symbol decides. If they agree and have equal length the result
    is EQUAL; if they agree but one is longer, the shorter is a prefix of the
    longer and the result is PREFIX (counted as "precedes or equals").

    Args:
        u: First word
        v: Second word
        alphabet: When given, both words are checked against it

    Returns:
        Ordering of u relative to v

    Raises:
        AlphabetMismatch: If a word does not belong to the alphabet
    """
    if alphabet is not None:
        alphabet.validate(u)
        alphabet.validate(v)

    for a, b in zip(u, v):
        if a < b:
            return Ordering.LESS
        if a > b:
            return Ordering.GREATER

    return Ordering.EQUAL if len(u) == len(v) else Ordering.PREFIX


def lex_leq(u: Word, v: Word) -> bool:
    """True when u precedes or equals v in the prefix-tolerant order."""
    return lex_compare(u, v) is not Ordering.GREATER


def prefix(w: Word, k: int) -> Word:
    """
    First k symbols of w.

    Raises:
        ValidationError: If k < 0 or k > |w|
    """
    validate_cut(len(w), k)
    return w[:k]


def suffix(w: Word, k: int) -> Word:
    """
    Last k symbols of w.

    Raises:
        ValidationError: If k < 0 or k > |w|
    """
    validate_cut(len(w), k)
    return w[len(w) - k:]


def rotations(w: Word) -> List[Word]:
    """Cyclic shifts of w, starting with w itself."""
    return [w[i:] + w[:i] for i in range(len(w))] if w else [EMPTY]


def least_period(w: Word) -> int:
    """Smallest p dividing |w| such that w is a power of its length-p prefix."""
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return p
    return 0


def is_primitive(w: Word) -> bool:
    """True when w is nonempty and not a proper power of a shorter word."""
    return len(w) > 0 and least_period(w) == len(w)


def format_word(w: Word) -> str:
    """
    Serialize a word.

    Plain digit string when all symbols are below 10, otherwise symbols joined
    by '.' (e.g. "1.0.11"). The empty word serializes to "".
    """
    if any(symbol >= 10 for symbol in w):
        return ".".join(str(symbol) for symbol in w)
    return "".join(str(symbol) for symbol in w)


def parse_word(text: str, alphabet: Optional[Alphabet] = None) -> Word:
    """
    Parse a serialized word.

    Args:
        text: Digit string, dot-separated symbols, "" or "ε" for the empty word
        alphabet: When given, symbols are checked against it

    Returns:
        Parsed word

    Raises:
        ValidationError: If text contains something other than digits and dots
    """
    text = text.strip()

    if text in ("", "ε", "eps"):
        return EMPTY

    parts = text.split(".") if "." in text else list(text)

    if not all(part.isdigit() for part in parts):
        raise ValidationError(f"Cannot parse word {text!r}")

    word = tuple(int(part) for part in parts)

    if alphabet is not None:
        alphabet.validate(word)

    return word
