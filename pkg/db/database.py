"""
SQLite storage for the layer cache.

One connection per run, opened by the runner or the cache command and shared
through a module-level instance. Writes commit immediately.
"""

import aiosqlite
from pathlib import Path
from typing import Iterable, List, Optional
import logging

logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).parent / "schema.sql"


class Database:
    """Async connection to one layer cache file."""

    def __init__(self, db_path: str):
        self.db_path = db_path
        self.connection: Optional[aiosqlite.Connection] = None

    async def connect(self):
        """Open the cache file, creating its directory and tables when missing."""
        db_file = Path(self.db_path)
        db_file.parent.mkdir(parents=True, exist_ok=True)
        fresh = not db_file.exists()

        self.connection = await aiosqlite.connect(self.db_path)
        # readers on the thread pool may overlap a flush
        await self.connection.execute("PRAGMA journal_mode=WAL")

        if fresh:
            logger.info(f"Creating layer cache at {self.db_path}")
        else:
            logger.debug(f"Opened layer cache at {self.db_path}")
        await self._initialize_schema()

    async def _initialize_schema(self):
        if not SCHEMA_PATH.exists():
            raise FileNotFoundError(f"Schema file not found: {SCHEMA_PATH}")
        await self.connection.executescript(SCHEMA_PATH.read_text())
        await self.connection.commit()

    async def close(self):
        if self.connection:
            await self.connection.close()
            self.connection = None
            logger.debug(f"Closed layer cache at {self.db_path}")

    async def execute(self, query: str, params: tuple = ()) -> aiosqlite.Cursor:
        """Run one statement and commit."""
        cursor = await self.connection.execute(query, params)
        await self.connection.commit()
        return cursor

    async def executemany(self, query: str, params_list: Iterable[tuple]):
        """
        Run one statement per parameter tuple in a single transaction.

        Args:
            query: SQL statement with placeholders
            params_list: Parameter tuples, one per row
        """
        await self.connection.executemany(query, params_list)
        await self.connection.commit()

    async def fetchall(self, query: str, params: tuple = ()) -> List[aiosqlite.Row]:
        cursor = await self.connection.execute(query, params)
        return await cursor.fetchall()


_db_instance: Optional[Database] = None


async def init_database(db_path: str) -> Database:
    """
    Open the layer cache and make it the module-level instance.

    Args:
        db_path: Path to the SQLite file

    Returns:
        The connected Database
    """
    global _db_instance

    _db_instance = Database(db_path)
    await _db_instance.connect()
    return _db_instance


async def close_database():
    """Close the module-level instance, if any."""
    global _db_instance

    if _db_instance:
        await _db_instance.close()
        _db_instance = None
