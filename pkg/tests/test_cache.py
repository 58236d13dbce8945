import asyncio

from db.database import Database
from language.cache import LayerCache, cached_families, clear_cached


def test_put_and_get():
    cache = LayerCache()
    cache.put_words("fam", 2, [(0, 0), (0, 1)])
    cache.put_count("fam", 9, 55)
    assert cache.get_words("fam", 2) == ((0, 0), (0, 1))
    assert cache.get_count("fam", 2) == 2
    assert cache.get_count("fam", 9) == 55
    assert cache.get_count(None, 2) is None
    assert cache.deepest_words("fam", 5) == (2, ((0, 0), (0, 1)))
    assert cache.families() == {"fam": 2}


def test_clear_one_family():
    cache = LayerCache()
    cache.put_count("a", 1, 2)
    cache.put_count("b", 1, 3)
    cache.clear("a")
    assert cache.get_count("a", 1) is None
    assert cache.get_count("b", 1) == 3


def test_flush_and_load_round_trip(tmp_path):
    async def scenario():
        db = Database(str(tmp_path / "layers.db"))
        await db.connect()
        try:
            cache = LayerCache()
            cache.put_words("fam", 2, [(0, 0), (0, 1), (1, 0)])
            cache.put_count("fam", 40, 10 ** 20)
            written = await cache.flush(db, {"fam": "golden"})
            again = await cache.flush(db)

            fresh = LayerCache()
            loaded = await fresh.load(db, "fam")
            families = await cached_families(db)
            await clear_cached(db, "fa")
            remaining = await cached_families(db)
            return written, again, loaded, fresh, families, remaining
        finally:
            await db.close()

    written, again, loaded, fresh, families, remaining = asyncio.run(scenario())
    assert written == 2
    assert again == 0
    assert loaded == 2
    assert fresh.get_words("fam", 2) == ((0, 0), (0, 1), (1, 0))
    assert fresh.get_count("fam", 40) == 10 ** 20
    assert families == [("fam", "golden", 2, 40)]
    assert remaining == []


def test_large_layers_persist_counts_only(tmp_path):
    async def scenario():
        db = Database(str(tmp_path / "layers.db"))
        await db.connect()
        try:
            cache = LayerCache(word_limit=1)
            cache.put_words("fam", 1, [(0,), (1,)])
            await cache.flush(db)
            fresh = LayerCache()
            await fresh.load(db, "fam")
            return fresh
        finally:
            await db.close()

    fresh = asyncio.run(scenario())
    assert fresh.get_words("fam", 1) is None
    assert fresh.get_count("fam", 1) == 2
