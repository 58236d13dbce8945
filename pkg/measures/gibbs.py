"""
Gibbs-ratio evidence for the empirical measure of maximal entropy.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from decomposition.core import Decomposition, GMFilter, g_words
from language.engine import enumerate_words
from language.oracle import Automaton, LanguageOracle
from measures.empirical import EmpiricalMeasure, empirical_mme
from reports.report import CheckRecord, EVIDENCE, INCONCLUSIVE
from utils.errors import ValidationError
from words.rules import validate_positive
import logging

logger = logging.getLogger(__name__)


@dataclass
class GibbsReport:
    """
    Ratios mu(w) e^{nh} per length n.

    Attributes:
        lower: n -> min over G_n of the ratio
        upper: n -> max over L_n of the ratio
        gm_lower: n -> min over G(M)_n of the ratio, when M was given
    """

    h: float
    m: int
    n_max: int
    lower: Dict[int, float] = field(default_factory=dict)
    upper: Dict[int, float] = field(default_factory=dict)
    gm_lower: Dict[int, float] = field(default_factory=dict)
    M: Optional[int] = None
    flags: List[str] = field(default_factory=list)

    @property
    def lower_constant(self) -> float:
        return min(self.lower.values()) if self.lower else 0.0

    @property
    def upper_constant(self) -> float:
        return max(self.upper.values()) if self.upper else math.inf

    def summary(self) -> str:
        return (f"Gibbs ratios at depth {self.m}, n <= {self.n_max}: "
                f"lower {self.lower_constant:.6f}, upper {self.upper_constant:.6f}")

    def to_record(self) -> CheckRecord:
        values = {
            "h": self.h,
            "m": self.m,
            "lower": {str(n): r for n, r in sorted(self.lower.items())},
            "upper": {str(n): r for n, r in sorted(self.upper.items())},
            "lower_constant": self.lower_constant,
            "upper_constant": self.upper_constant,
        }
        if self.M is not None:
            values["M"] = self.M
            values["gm_lower"] = {str(n): r for n, r in sorted(self.gm_lower.items())}
        return CheckRecord(
            name="gibbs",
            depth=self.n_max,
            values=values,
            verdict=INCONCLUSIVE if self.flags else EVIDENCE,
            notes=list(self.flags),
        )


def _thirds(series: Dict[int, float]) -> Optional[tuple]:
    keys = sorted(series)
    if len(keys) < 3:
        return None
    third = max(1, len(keys) // 3)
    return [series[n] for n in keys[:third]], [series[n] for n in keys[-third:]]


def gibbs_report(language: LanguageOracle, d: Decomposition, h: float, n_max: int, m: int,
                 M: Optional[int] = None, presentation: Optional[Automaton] = None,
                 mu: Optional[EmpiricalMeasure] = None) -> GibbsReport:
    """
    Lower ratios over G_n and upper ratios over L_n for n <= n_max.

    Flags the run when the lower ratios in the last third fall below half
    of those in the first third, or the upper ratios more than double.
    Words outside the language have no ratio.

    Raises:
        ValidationError: If m < 2 n_max
    """
    validate_positive("n_max", n_max)
    if m < 2 * n_max:
        raise ValidationError(f"Depth m = {m} must be at least 2 n_max = {2 * n_max}")

    layers = {n: enumerate_words(language, n) for n in range(1, n_max + 1)}
    if mu is None:
        targets = [w for n in layers for w in layers[n]]
        mu = empirical_mme(language, m, targets, presentation)

    report = GibbsReport(h=h, m=m, n_max=n_max, M=M)
    gm = GMFilter(d, M) if M is not None else None
    for n, layer in layers.items():
        scale = math.exp(n * h)
        ratios = {w: mu(w) * scale for w in layer}
        report.upper[n] = max(ratios.values())
        good = g_words(d, language, n)
        if good:
            report.lower[n] = min(ratios[w] for w in good)
        if gm is not None:
            gm_ratios = [ratios[w] for w in layer if gm.contains(w)]
            if gm_ratios:
                report.gm_lower[n] = min(gm_ratios)

    split = _thirds(report.lower)
    if split and min(split[1]) < 0.5 * min(split[0]):
        report.flags.append("lower Gibbs ratios trend toward 0")
    split = _thirds(report.upper)
    if split and max(split[1]) > 2 * max(split[0]):
        report.flags.append("upper Gibbs ratios grow")
    if report.flags:
        logger.warning(f"Gibbs evidence for {language.name}: {'; '.join(report.flags)}")
    logger.info(report.summary())
    return report
