"""
Content fingerprints for language families.
Used as the cache key for stored layers and as the system id in reports.
"""

import hashlib
import json
from typing import Any, Mapping
import logging

logger = logging.getLogger(__name__)


def canonical_json(params: Mapping[str, Any]) -> str:
    """
    Serialize defining parameters deterministically.

    Args:
        params: Mapping of parameter names to JSON-compatible values
                (tuples become lists, unknown objects their str())

    Returns:
        Canonical JSON text
    """
    return json.dumps(params, sort_keys=True, separators=(",", ":"), default=str)


def compute_fingerprint(params: Mapping[str, Any]) -> str:
    """
    Compute the SHA-256 fingerprint of a family's defining parameters.

    Args:
        params: Defining parameters (beta digits, S elements, generators, code table)

    Returns:
        Hex digest string
    """
    try:
        digest = hashlib.sha256(canonical_json(params).encode("utf-8")).hexdigest()
        logger.debug(f"Computed fingerprint {digest[:12]} for {params.get('family', '?')}")
        return digest

    except (TypeError, ValueError) as e:
        logger.error(f"Failed to fingerprint parameters: {e}")
        raise


def short_id(fingerprint: str, length: int = 12) -> str:
    """Abbreviated fingerprint for log lines and tables."""
    return fingerprint[:length]
