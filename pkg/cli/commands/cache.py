"""
cache command - inspect or clear the persistent layer cache.
"""

from pathlib import Path
import logging

from config import Config
from cli.events import EXIT_OK, register_events
from db.database import close_database, init_database
from language.cache import cached_families, clear_cached
from utils.fingerprint import short_id

logger = logging.getLogger(__name__)


def register_cache_command(subparsers):
    """Register the cache command."""

    parser = subparsers.add_parser("cache", help="Show or clear cached layers")
    parser.add_argument("action", choices=("show", "clear"))
    parser.add_argument("--family", default=None, help="Family id (or prefix) to clear")
    parser.add_argument("--cache-dir", default=Config.CACHE_DIR, help="Layer cache directory")

    async def cache_command(args) -> int:
        """List cached families or delete their records."""
        db = await init_database(str(Path(args.cache_dir) / Config.CACHE_FILE))
        try:
            if args.action == "clear":
                await clear_cached(db, args.family)
                logger.info(f"Cleared cached layers for {args.family or 'all families'}")
                return EXIT_OK

            families = await cached_families(db)
            if not families:
                print("Layer cache is empty.")
                return EXIT_OK
            print(f"{'family':<14}{'layers':>8}{'deepest':>9}  label")
            for family_id, label, layers, deepest in families:
                print(f"{short_id(family_id):<14}{layers:>8}{deepest:>9}  {label or ''}")
            return EXIT_OK
        finally:
            await close_database()

    parser.set_defaults(handler=register_events(cache_command))
