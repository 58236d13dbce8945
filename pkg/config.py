"""
Configuration management for shiftlab.
Loads settings from environment variables.
"""

import os
from dotenv import load_dotenv
import logging

from utils.errors import ConfigError

# Load .env file
load_dotenv()


class Config:
    """Application configuration."""

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Layer cache
    CACHE_DIR: str = os.getenv("SHIFTLAB_CACHE_DIR", ".shiftlab-cache")
    CACHE_WORD_LIMIT: int = int(os.getenv("SHIFTLAB_CACHE_WORD_LIMIT", "4096"))
    CACHE_FILE: str = "layers.db"

    # Budgets
    ENUMERATION_BUDGET: int = int(os.getenv("SHIFTLAB_ENUM_BUDGET", "5000000"))
    TUPLE_BUDGET: int = int(os.getenv("SHIFTLAB_TUPLE_BUDGET", "2000000"))
    PREIMAGE_BUDGET: int = int(os.getenv("SHIFTLAB_PREIMAGE_BUDGET", "2000000"))
    STATE_LIMIT: int = int(os.getenv("SHIFTLAB_STATE_LIMIT", "100000"))

    # Beta digits
    BETA_PRECISION_BITS: int = int(os.getenv("SHIFTLAB_BETA_PRECISION", "256"))

    # Worker pool
    THREADS: int = int(os.getenv("SHIFTLAB_THREADS", str(os.cpu_count() or 1)))

    # Reports
    REPORT_FORMAT: str = os.getenv("SHIFTLAB_REPORT_FORMAT", "json")

    # Verdict thresholds
    ZERO_RATE_THRESHOLD: float = float(os.getenv("SHIFTLAB_ZERO_RATE", "0.1"))
    MARGIN_THRESHOLD: float = float(os.getenv("SHIFTLAB_MARGIN", "0.05"))

    REPORT_FORMATS = ("json", "csv", "tsv")

    @classmethod
    def validate(cls) -> None:
        """Validate configuration values."""
        for name in ("CACHE_WORD_LIMIT", "ENUMERATION_BUDGET", "TUPLE_BUDGET",
                     "PREIMAGE_BUDGET", "STATE_LIMIT", "BETA_PRECISION_BITS", "THREADS"):
            if getattr(cls, name) <= 0:
                raise ConfigError(f"{name} must be positive, got {getattr(cls, name)}")

        if cls.REPORT_FORMAT not in cls.REPORT_FORMATS:
            raise ConfigError(
                f"SHIFTLAB_REPORT_FORMAT must be one of {', '.join(cls.REPORT_FORMATS)}, "
                f"got {cls.REPORT_FORMAT!r}"
            )

        if cls.ZERO_RATE_THRESHOLD <= 0 or cls.MARGIN_THRESHOLD <= 0:
            raise ConfigError("Verdict thresholds must be positive")

    @classmethod
    def setup_logging(cls) -> None:
        """Configure logging."""
        level = getattr(logging, cls.LOG_LEVEL.upper(), logging.INFO)

        logging.basicConfig(
            level=level,
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )


# Validate config on import
Config.validate()
Config.setup_logging()
