"""
Input validation utilities.
Parse and sanitize command-line values before they reach the domain code.
"""

import re
from typing import List, Optional

from utils.errors import ValidationError


CONDITION_NAMES = ("I", "II", "III", "S", "W", "Per")


def sanitize_input(text: str, max_length: int = 4096) -> str:
    """
    Sanitize user input text.

    Args:
        text: Raw input text
        max_length: Maximum allowed length

    Returns:
        Stripped text

    Raises:
        ValidationError: If text is longer than max_length
    """
    text = text.strip()

    if len(text) > max_length:
        raise ValidationError(f"Input too long (max {max_length} chars), got {len(text)}")

    return text


def parse_int_list(text: str) -> List[int]:
    """
    Parse a comma-separated list of nonnegative integers such as "1,2".

    Args:
        text: Raw list text

    Returns:
        Sorted list without duplicates

    Raises:
        ValidationError: If the list is empty or has a bad entry
    """
    text = sanitize_input(text)

    if not text:
        raise ValidationError("Integer list cannot be empty")

    values = set()
    for part in text.split(","):
        part = part.strip()
        if not re.match(r'^\d+$', part):
            raise ValidationError(f"Expected a nonnegative integer, got {part!r}")
        values.add(int(part))

    return sorted(values)


def parse_positive_int(text: str, name: str = "value") -> int:
    """
    Parse a positive integer.

    Raises:
        ValidationError: If text is not a positive integer
    """
    text = sanitize_input(str(text))

    if not re.match(r'^\d+$', text) or int(text) <= 0:
        raise ValidationError(f"{name} must be a positive integer, got {text!r}")

    return int(text)


def parse_tolerance(text: str) -> float:
    """
    Parse a positive tolerance such as "1e-10".

    Raises:
        ValidationError: If text is not a positive float
    """
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise ValidationError(f"Tolerance must be a number, got {text!r}")

    if not value > 0:
        raise ValidationError(f"Tolerance must be > 0, got {value}")

    return value


def parse_conditions(text: Optional[str]) -> List[str]:
    """
    Parse a condition list such as "I,II,III".

    Args:
        text: Comma-separated names, case-insensitive for roman numerals

    Returns:
        Names in canonical spelling, input order preserved

    Raises:
        ValidationError: If a name is not a known condition
    """
    if not text:
        return []

    lookup = {name.lower(): name for name in CONDITION_NAMES}
    names = []
    for part in sanitize_input(text).split(","):
        key = part.strip().lower()
        if not key:
            continue
        if key not in lookup:
            raise ValidationError(
                f"Unknown condition {part!r}; expected one of {', '.join(CONDITION_NAMES)}"
            )
        if lookup[key] not in names:
            names.append(lookup[key])

    return names


def parse_name_list(text: Optional[str]) -> List[str]:
    """Split a comma-separated list of check names."""
    if not text:
        return []
    return [part.strip() for part in sanitize_input(text).split(",") if part.strip()]
