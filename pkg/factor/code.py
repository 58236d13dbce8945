"""
Sliding block codes.

A BlockCode of radius k maps every admissible (2k+1)-window of the source
language to a target symbol. apply_code() slides the window along a word, so
the image is 2k symbols shorter than the source word.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Mapping

from language.engine import enumerate_words
from language.oracle import LanguageOracle
from utils.errors import TableMiss, ValidationError
from words.word import EMPTY, Word, format_word, parse_word
from words.rules import validate_alphabet_size, validate_cut, validate_nonnegative
import logging

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BlockCode:
    """
    Window map phi on (2k+1)-words.

    Attributes:
        k: Window radius
        source_size: Source alphabet size
        target_size: Target alphabet size
        table: Window word -> target symbol
    """

    k: int
    source_size: int
    target_size: int
    table: Mapping[Word, int] = field(default_factory=dict)

    def __post_init__(self):
        validate_nonnegative("k", self.k)
        validate_alphabet_size(self.source_size)
        validate_alphabet_size(self.target_size)
        for window, symbol in self.table.items():
            if len(window) != self.window:
                raise ValidationError(f"Window {format_word(window)} has length {len(window)}, expected {self.window}")
            if any(a < 0 or a >= self.source_size for a in window):
                raise ValidationError(f"Window {format_word(window)} leaves the source alphabet")
            if not 0 <= symbol < self.target_size:
                raise ValidationError(f"Target symbol {symbol} outside alphabet of size {self.target_size}")

    @property
    def window(self) -> int:
        return 2 * self.k + 1

    def phi(self, window: Word) -> int:
        try:
            return self.table[window]
        except KeyError:
            raise TableMiss(window)

    def params(self) -> Dict[str, object]:
        return {
            "k": self.k,
            "source": self.source_size,
            "target": self.target_size,
            "table": {format_word(w): s for w, s in sorted(self.table.items())},
        }

    @classmethod
    def from_function(cls, language: LanguageOracle, k: int, phi: Callable[[Word], int],
                      target_size: int) -> "BlockCode":
        """Tabulate phi on every admissible window L_{2k+1}."""
        validate_nonnegative("k", k)
        windows = enumerate_words(language, 2 * k + 1)
        table = {w: int(phi(w)) for w in windows}
        return cls(k, language.alphabet.size, target_size, table)

    def check_total(self, language: LanguageOracle) -> List[Word]:
        """Admissible windows missing from the table (empty for a valid code)."""
        return [w for w in enumerate_words(language, self.window) if w not in self.table]


def apply_code(code: BlockCode, w: Word) -> Word:
    """
    Phi(w): slide phi along w.

    Words of length exactly 2k map to the empty word.

    Raises:
        ValidationError: If |w| < 2k
        TableMiss: If some window of w is not in the table
    """
    validate_cut(len(w), 2 * code.k)
    if len(w) == 2 * code.k:
        return EMPTY
    return tuple(code.phi(w[i:i + code.window]) for i in range(len(w) - 2 * code.k))


def boundary_prefix(w: Word, n: int) -> Word:
    """i^p_n(w): first n symbols."""
    validate_cut(len(w), n)
    return w[:n]


def boundary_suffix(w: Word, n: int) -> Word:
    """i^s_n(w): last n symbols."""
    validate_cut(len(w), n)
    return w[len(w) - n:]


def homomorphism_check(code: BlockCode, v: Word, w: Word) -> bool:
    """
    Verify the three splitting identities for Phi(vw):

        Phi(vw) = Phi(v) Phi(i^s_2k(v) i^p_2k(w)) Phi(w)
                = Phi(v) Phi(i^s_2k(v) w)
                = Phi(v i^p_2k(w)) Phi(w)

    Raises:
        ValidationError: If |v| or |w| is shorter than 2k
    """
    span = 2 * code.k
    if len(v) < span or len(w) < span:
        raise ValidationError(f"Both words need length >= {span}, got {len(v)} and {len(w)}")
    whole = apply_code(code, v + w)
    head = apply_code(code, v)
    tail = apply_code(code, w)
    first = head + apply_code(code, boundary_suffix(v, span) + boundary_prefix(w, span)) + tail
    second = head + apply_code(code, boundary_suffix(v, span) + w)
    third = apply_code(code, v + boundary_prefix(w, span)) + tail
    return whole == first == second == third


def load_code(path: str) -> BlockCode:
    """
    Read a block code from JSON: {"k": 1, "source_alphabet": 2,
    "target_alphabet": 2, "table": {"010": 1, ...}}.

    Raises:
        ValidationError: If the file is missing or malformed
    """
    file = Path(path)
    if not file.exists():
        raise ValidationError(f"Code file not found: {path}")
    try:
        data = json.loads(file.read_text())
    except json.JSONDecodeError as e:
        raise ValidationError(f"Code file {path} is not valid JSON: {e}")

    try:
        k = int(data["k"])
        target = int(data["target_alphabet"])
        raw_table = data["table"]
    except (KeyError, TypeError, ValueError) as e:
        raise ValidationError(f"Code file {path} is missing field {e}")

    table = {parse_word(window): int(symbol) for window, symbol in raw_table.items()}
    source = int(data.get("source_alphabet") or max(2, max((max(w) for w in table if w), default=0) + 1))
    code = BlockCode(k, source, target, table)
    logger.info(f"Loaded block code from {path}: k={k}, {len(table)} windows")
    return code


def dump_code(code: BlockCode, path: str) -> None:
    data = {
        "k": code.k,
        "source_alphabet": code.source_size,
        "target_alphabet": code.target_size,
        "table": {format_word(w): s for w, s in sorted(code.table.items())},
    }
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
