"""
Concatenation-set algebra for word collections.
"""

from typing import FrozenSet, Iterable

from words.word import Word


def concat_set(left: Iterable[Word], right: Iterable[Word], language) -> FrozenSet[Word]:
    """
    Admissible concatenations of two finite word sets.

    Only words accepted by the language oracle are included, so the result
    may be empty even when both sets are nonempty.

    Args:
        left: Finite word set A
        right: Finite word set B
        language: Oracle with a contains(word) method

    Returns:
        {vw : v in A, w in B, vw admissible}
    """
    right = list(right)
    return frozenset(
        v + w
        for v in left
        for w in right
        if language.contains(v + w)
    )
