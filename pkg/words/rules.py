"""
Validation rules for words and alphabets.
Every word entering the engine passes through here first.
"""

from typing import Iterable

from utils.errors import AlphabetMismatch, ValidationError

MAX_ALPHABET_SIZE = 255


def validate_alphabet_size(size: int) -> None:
    """
    Validate an alphabet size.

    Args:
        size: Number of symbols p (symbols are 0..p-1)

    Raises:
        ValidationError: If size is not an integer in 2..255
    """
    if not isinstance(size, int) or isinstance(size, bool):
        raise ValidationError(f"Alphabet size must be an integer, got {type(size).__name__}")

    if size < 2 or size > MAX_ALPHABET_SIZE:
        raise ValidationError(f"Alphabet size must be between 2 and {MAX_ALPHABET_SIZE}, got {size}")


def validate_symbols(word: Iterable[int], size: int) -> None:
    """
    Validate that every symbol of a word lies in 0..size-1.

    Raises:
        AlphabetMismatch: If a symbol is out of range
    """
    for position, symbol in enumerate(word):
        if not isinstance(symbol, int) or symbol < 0 or symbol >= size:
            raise AlphabetMismatch(
                f"Symbol {symbol!r} at position {position} is outside alphabet of size {size}"
            )


def validate_cut(length: int, k: int) -> None:
    """
    Validate a prefix/suffix length.

    Raises:
        ValidationError: If k is negative or longer than the word
    """
    if not isinstance(k, int) or k < 0:
        raise ValidationError(f"Cut length must be a nonnegative integer, got {k!r}")

    if k > length:
        raise ValidationError(f"Cut length {k} exceeds word length {length}")


def validate_positive(name: str, value: int) -> None:
    """
    Validate a positive integer parameter (depths, bounds).

    Raises:
        ValidationError: If value is not a positive integer
    """
    if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
        raise ValidationError(f"{name} must be a positive integer, got {value!r}")


def validate_nonnegative(name: str, value: int) -> None:
    """
    Validate a nonnegative integer parameter (gap sizes, bounds).

    Raises:
        ValidationError: If value is negative or not an integer
    """
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise ValidationError(f"{name} must be a nonnegative integer, got {value!r}")
