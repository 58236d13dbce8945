"""
Check runner: builds the system, loads the layer cache, runs the requested
checks on a worker pool and emits one report.
"""

import asyncio
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import aiosqlite

from cli.events import exit_code_for_report
from cli.pipeline import CHECKS, run_named_check
from config import Config
from db.database import close_database, init_database
from language.cache import get_layer_cache
from reports.report import CheckRecord, FAIL, Report
from systems.registry import System, build_system
from utils.errors import BudgetExceeded, ConfigError, ValidationError
import logging

logger = logging.getLogger(__name__)

Check = Callable[[System, "RunConfig"], List[CheckRecord]]

# Run settings that do not change any computed value
_PLUMBING = ("out", "cache_dir", "use_cache", "threads", "report_format")


@dataclass
class RunConfig:
    """
    Settings of one run, built from CLI flags with Config fallbacks.

    Attributes:
        system: System spec string
        checks: Names from the check catalog, run in this order
        enumerate_depth: Longest words enumerated explicitly
        count_depth: Longest layer counted
        extension_depth: Longest G(M) word extended by the condition III search
        spec_n_max: Longest G word in a gluing tuple
        tuple_size: Largest gluing tuple
        M: Boundary bound for G(M)
        tau_max: Longest extension tried
        delta: Density slack
        M_max: Largest M tried by the density check
        mme_depth: Depth of the empirical measure
        periodic_depth: Period bound for Per(n)
        targets_len: Longest cylinder estimated
        gibbs_n_max: Longest word in the Gibbs ratios
        tolerance: Root-finding and comparison tolerance
        rate_tolerance: Allowed gap between a growth rate and the entropy
        beta_depth: Digits of w(beta) computed
    """

    system: str
    checks: Tuple[str, ...] = ()
    enumerate_depth: int = 12
    count_depth: int = 25
    extension_depth: int = 8
    spec_n_max: int = 5
    tuple_size: int = 3
    M: int = 3
    tau_max: int = 6
    delta: float = 0.1
    M_max: int = 6
    mme_depth: int = 24
    periodic_depth: int = 16
    targets_len: int = 3
    gibbs_n_max: int = 8
    tolerance: float = 1e-10
    rate_tolerance: float = 0.05
    beta_depth: int = 64
    report_format: str = Config.REPORT_FORMAT
    out: Optional[str] = None
    cache_dir: str = Config.CACHE_DIR
    use_cache: bool = True
    threads: int = Config.THREADS
    options: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        self.checks = tuple(self.checks)
        for name in ("enumerate_depth", "count_depth", "extension_depth", "spec_n_max", "tuple_size",
                     "M", "tau_max", "M_max", "mme_depth", "periodic_depth", "targets_len",
                     "gibbs_n_max", "beta_depth", "threads"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if not self.tolerance > 0 or not self.rate_tolerance > 0:
            raise ConfigError("Tolerances must be > 0")
        if not 0 < self.delta < 1:
            raise ConfigError(f"delta must lie in (0, 1), got {self.delta}")
        if self.report_format not in Config.REPORT_FORMATS:
            raise ConfigError(f"Unknown report format {self.report_format!r}")
        unknown = [name for name in self.checks if name not in CHECKS]
        if unknown:
            raise ValidationError(f"Unknown checks: {', '.join(unknown)}; available: {', '.join(CHECKS)}")

    def as_dict(self) -> Dict[str, object]:
        """Settings recorded in the report."""
        data = asdict(self)
        for key in _PLUMBING:
            data.pop(key, None)
        data["checks"] = list(self.checks)
        return data


def _families(system: System) -> Dict[str, str]:
    """family_id -> label for the system and its source."""
    families = {}
    current: Optional[System] = system
    while current is not None:
        if current.language.family_id:
            families[current.language.family_id] = current.label
        current = current.base
    return families


async def open_cache(config: RunConfig, systems: Sequence[System]):
    """
    Connect the layer cache and preload the systems' records.

    Returns:
        The database, or None when caching is off or the file cannot be opened
    """
    if not config.use_cache:
        return None
    path = Path(config.cache_dir) / Config.CACHE_FILE
    try:
        db = await init_database(str(path))
    except (OSError, aiosqlite.Error) as e:
        logger.warning(f"Layer cache unavailable at {path}: {e}")
        return None
    cache = get_layer_cache()
    for system in systems:
        for family_id in _families(system):
            await cache.load(db, family_id)
    return db


async def close_cache(db, systems: Sequence[System]) -> None:
    """Flush new layer records and close the connection."""
    if db is None:
        return
    labels: Dict[str, str] = {}
    for system in systems:
        labels.update(_families(system))
    try:
        await get_layer_cache().flush(db, labels)
    finally:
        await close_database()


def _execute(name: str, check: Check, system: System, config: RunConfig) -> List[CheckRecord]:
    """Run one check; input and budget errors propagate, anything else becomes a failed record."""
    try:
        records = check(system, config)
    except (ValidationError, ConfigError, BudgetExceeded):
        raise
    except Exception as e:
        logger.error(f"Check {name} on {system.label} failed: {e}", exc_info=True)
        return [CheckRecord(name=name, depth=0, verdict=FAIL, notes=[f"error: {e}"])]
    for record in records:
        logger.info(f"{system.label}: {record.name} -> {record.verdict}")
    return records


async def run_checks(system: System, config: RunConfig,
                     checks: Sequence[Tuple[str, Check]]) -> List[CheckRecord]:
    """Run checks concurrently; records come back in the order the checks were given."""
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        futures = [loop.run_in_executor(pool, _execute, name, check, system, config) for name, check in checks]
        results = await asyncio.gather(*futures)
    return [record for records in results for record in records]


def emit_report(report: Report, config: RunConfig) -> None:
    """Write the report to config.out, or print it."""
    if config.out:
        path = report.write(config.out, config.report_format)
        logger.info(f"Report written to {path}")
    else:
        sys.stdout.write(report.render(config.report_format))
    logger.info(report.summary())


async def run(config: RunConfig, checks: Optional[Sequence[Tuple[str, Check]]] = None,
              system: Optional[System] = None, emit: bool = True) -> Tuple[Report, int]:
    """
    Build the system, run the checks and emit the report.

    Args:
        config: Run settings
        checks: (name, callable) pairs; the catalog entries named in
                config.checks by default
        system: Prebuilt system (built from config.system otherwise)
        emit: Write or print the report

    Returns:
        (report, exit code)
    """
    system = system or build_system(config.system, config.beta_depth)
    if checks is None:
        checks = [(name, lambda s, c, name=name: run_named_check(name, s, c)) for name in config.checks]

    report = Report(system.fingerprint, system.label, config.as_dict())
    db = await open_cache(config, [system])
    try:
        report.extend(await run_checks(system, config, checks))
    finally:
        await close_cache(db, [system])

    if emit:
        emit_report(report, config)
    return report, exit_code_for_report(report)


def config_from_args(args, system: str, checks: Sequence[str], **settings) -> RunConfig:
    """RunConfig from the shared output flags plus command-specific settings."""
    return RunConfig(
        system=system,
        checks=tuple(checks),
        report_format=args.report_format,
        out=args.out,
        cache_dir=args.cache_dir,
        use_cache=not args.no_cache,
        threads=args.threads,
        **settings,
    )
