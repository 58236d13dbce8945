"""
Layer cache: per-family word lists and counts.

The in-memory cache is what the engine consults. The runner loads it from the
SQLite database before a run and flushes new records afterwards.
"""

import json
import threading
from typing import Dict, List, Optional, Sequence, Set, Tuple

from config import Config
from words.word import Word, format_word, parse_word
import logging

logger = logging.getLogger(__name__)

Key = Tuple[str, int]


class LayerCache:
    """Thread-safe store of layer counts and (small) word lists."""

    def __init__(self, word_limit: Optional[int] = None):
        self.word_limit = word_limit if word_limit is not None else Config.CACHE_WORD_LIMIT
        self._counts: Dict[Key, int] = {}
        self._words: Dict[Key, Tuple[Word, ...]] = {}
        self._dirty: Set[Key] = set()
        self._lock = threading.Lock()

    def get_count(self, family_id: Optional[str], n: int) -> Optional[int]:
        if family_id is None:
            return None
        return self._counts.get((family_id, n))

    def get_words(self, family_id: Optional[str], n: int) -> Optional[Tuple[Word, ...]]:
        if family_id is None:
            return None
        return self._words.get((family_id, n))

    def put_count(self, family_id: Optional[str], n: int, count: int) -> None:
        if family_id is None:
            return
        key = (family_id, n)
        with self._lock:
            if self._counts.get(key) != count:
                self._counts[key] = count
                self._dirty.add(key)

    def put_words(self, family_id: Optional[str], n: int, words: Sequence[Word]) -> None:
        """Store a layer; every layer stays in memory, only small ones persist their words."""
        if family_id is None:
            return
        key = (family_id, n)
        with self._lock:
            self._words[key] = tuple(words)
            if self._counts.get(key) != len(words):
                self._counts[key] = len(words)
            self._dirty.add(key)

    def deepest_words(self, family_id: Optional[str], n: int) -> Tuple[int, Optional[Tuple[Word, ...]]]:
        """Longest cached layer of length at most n, as (length, words)."""
        if family_id is None:
            return 0, None
        for m in range(n, 0, -1):
            words = self._words.get((family_id, m))
            if words is not None:
                return m, words
        return 0, None

    def families(self) -> Dict[str, int]:
        """Number of cached layers per family."""
        summary: Dict[str, int] = {}
        for family_id, _ in self._counts:
            summary[family_id] = summary.get(family_id, 0) + 1
        return summary

    def clear(self, family_id: Optional[str] = None) -> None:
        with self._lock:
            if family_id is None:
                self._counts.clear()
                self._words.clear()
                self._dirty.clear()
                return
            for store in (self._counts, self._words):
                for key in [key for key in store if key[0] == family_id]:
                    del store[key]
            self._dirty = {key for key in self._dirty if key[0] != family_id}

    async def load(self, db, family_id: str) -> int:
        """
        Load one family's records from the database.

        Args:
            db: Connected db.database.Database
            family_id: Family fingerprint

        Returns:
            Number of records loaded
        """
        rows = await db.fetchall(
            "SELECT n, count, words FROM layer_cache WHERE family_id = ?", (family_id,)
        )
        with self._lock:
            for n, count, words in rows:
                key = (family_id, int(n))
                self._counts[key] = int(count)
                if words is not None:
                    self._words[key] = tuple(parse_word(text) for text in json.loads(words))
        logger.debug(f"Loaded {len(rows)} cached layers for family {family_id[:12]}")
        return len(rows)

    async def flush(self, db, labels: Optional[Dict[str, str]] = None) -> int:
        """
        Write dirty records to the database.

        Args:
            db: Connected db.database.Database
            labels: Optional family_id -> label map stored alongside the rows

        Returns:
            Number of records written
        """
        with self._lock:
            dirty = sorted(self._dirty)
            self._dirty.clear()
            rows = []
            for key in dirty:
                words = self._words.get(key)
                payload = None
                if words is not None and len(words) <= self.word_limit:
                    payload = json.dumps([format_word(w) for w in words])
                label = (labels or {}).get(key[0])
                rows.append((key[0], key[1], str(self._counts[key]), payload, label))

        if rows:
            await db.executemany(
                "INSERT OR REPLACE INTO layer_cache (family_id, n, count, words, label) "
                "VALUES (?, ?, ?, ?, ?)",
                rows,
            )
            logger.info(f"Flushed {len(rows)} layer records to cache")
        return len(rows)


async def cached_families(db) -> List[Tuple[str, Optional[str], int, int]]:
    """(family_id, label, layers, deepest n) for every cached family."""
    rows = await db.fetchall(
        "SELECT family_id, MAX(label), COUNT(*), MAX(n) FROM layer_cache GROUP BY family_id ORDER BY family_id"
    )
    return [(row[0], row[1], int(row[2]), int(row[3])) for row in rows]


async def clear_cached(db, family_id: Optional[str] = None) -> None:
    """Delete cached records, for one family or all of them."""
    if family_id:
        await db.execute("DELETE FROM layer_cache WHERE family_id LIKE ?", (family_id + "%",))
    else:
        await db.execute("DELETE FROM layer_cache")


# Global cache instance
_cache: Optional[LayerCache] = None


def get_layer_cache() -> LayerCache:
    """Get or create the process-wide layer cache."""
    global _cache
    if _cache is None:
        _cache = LayerCache()
    return _cache
