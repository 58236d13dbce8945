"""
Check records and reports.

Every checker returns a CheckRecord; a Report collects the records of one run
and writes them as JSON, CSV or TSV. Writes are atomic (temporary file plus
rename) and deterministic apart from the generated_at field.
"""

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from utils.errors import ValidationError
import logging

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1.1"

PASS = "pass"
FAIL = "fail"
EVIDENCE = "evidence"
INCONCLUSIVE = "inconclusive"

VERDICTS = (PASS, FAIL, EVIDENCE, INCONCLUSIVE)

FLOAT_DIGITS = 12


def normalize_value(value: Any) -> Any:
    """
    Convert a value into deterministic JSON-compatible data.

    Floats keep 12 significant digits, infinities become strings,
    Fractions become "p/q" strings, tuples of ints become lists.
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return float(f"{value:.{FLOAT_DIGITS}g}")
    if isinstance(value, dict):
        return {str(key): normalize_value(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [normalize_value(item) for item in items]
    try:
        return float(f"{float(value):.{FLOAT_DIGITS}g}")
    except (TypeError, ValueError):
        return str(value)


@dataclass
class CheckRecord:
    """Result of one check."""

    name: str
    depth: int
    values: Dict[str, Any] = field(default_factory=dict)
    verdict: str = INCONCLUSIVE
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValidationError(f"Unknown verdict {self.verdict!r}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "depth": self.depth,
            "values": normalize_value(self.values),
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


class Report:
    """All check records of one run."""

    def __init__(self, system_id: str = "", system_label: str = "", config: Optional[Dict[str, Any]] = None):
        self.schema_version = SCHEMA_VERSION
        self.system_id = system_id
        self.system_label = system_label
        self.config = dict(config or {})
        self.records: List[CheckRecord] = []
        self.generated_at = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")

    def add(self, record: CheckRecord) -> None:
        self.records.append(record)

    def extend(self, records: List[CheckRecord]) -> None:
        self.records.extend(records)

    def has_failures(self) -> bool:
        """Check if any record failed."""
        return any(record.verdict == FAIL for record in self.records)

    def verdict_counts(self) -> Dict[str, int]:
        counts = {verdict: 0 for verdict in VERDICTS}
        for record in self.records:
            counts[record.verdict] += 1
        return counts

    def summary(self) -> str:
        """Generate human-readable summary."""
        counts = self.verdict_counts()
        parts = [f"{counts[verdict]} {verdict}" for verdict in VERDICTS if counts[verdict]]
        label = self.system_label or self.system_id[:12]
        return f"{label}: " + (", ".join(parts) if parts else "no checks run")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "system": {"id": self.system_id, "label": self.system_label},
            "config": normalize_value(self.config),
            "generated_at": self.generated_at,
            "records": [record.to_dict() for record in self.records],
        }

    def render(self, fmt: str = "json") -> str:
        """
        Render the report as text.

        Args:
            fmt: json | csv | tsv

        Raises:
            ValidationError: For an unknown format
        """
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
        if fmt in ("csv", "tsv"):
            return self._render_table("," if fmt == "csv" else "\t")
        raise ValidationError(f"Unknown report format {fmt!r}")

    def _render_table(self, delimiter: str) -> str:
        """One row per (record, value key); compound values as compact JSON."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, delimiter=delimiter, lineterminator="\n")
        writer.writerow(["schema_version", "system", "check", "depth", "verdict", "key", "value"])
        for record in self.records:
            values = normalize_value(record.values)
            if not values:
                values = {"": ""}
            for key in sorted(values):
                value = values[key]
                if isinstance(value, (list, dict)):
                    value = json.dumps(value, sort_keys=True, separators=(",", ":"))
                writer.writerow([self.schema_version, self.system_id[:12], record.name,
                                 record.depth, record.verdict, key, value])
        return buffer.getvalue()

    def write(self, path: str, fmt: str = "json") -> Path:
        """
        Write the report atomically.

        Args:
            path: Destination file
            fmt: json | csv | tsv

        Returns:
            Path written
        """
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        text = self.render(fmt)

        handle, temp_path = tempfile.mkstemp(dir=str(target.parent), prefix=f".{target.name}.", suffix=".tmp")
        try:
            with os.fdopen(handle, "w", encoding="utf-8", newline="") as stream:
                stream.write(text)
            os.replace(temp_path, target)
        except Exception:
            if os.path.exists(temp_path):
                os.unlink(temp_path)
            raise

        logger.info(f"Report written to {target} ({len(self.records)} records, {fmt})")
        return target
