"""
System spec strings.

    beta:<beta>                 beta shift (golden, 1.8, 7/4, root(x^3-x-1, near=1.3))
    sgap:<set>[;bounded]        S-gap shift with finite S, e.g. sgap:1,2
    sgap:<rule>@<max>           infinite rule (all, pow2, odd, even) truncated at max
    coded:<file>|<w1,w2,...>    coded system from a generator file or inline list
    full:<p>                    full p-shift
    golden-sft                  binary words without 11
    orbit:<word>                orbit closure of the periodic point word^inf
    factor:<code.json>@<spec>   image of another system under a block code
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from decomposition.core import Decomposition
from factor.code import BlockCode, load_code
from factor.transport import FactorLanguage, transport_decomposition
from language.builtin import full_shift, golden_mean_sft
from language.oracle import Automaton, LanguageOracle
from systems.beta import beta_decomposition, beta_finite_automaton, beta_oracle, build_beta_shift
from systems.coded import GeneratorSet, build_generator_set, coded_decomposition, coded_oracle, load_generators
from systems.sgap import LITERAL, SGapAutomaton, build_sgap_shift, sgap_decomposition, sgap_entropy, sgap_oracle
from utils.errors import ValidationError
from utils.fingerprint import compute_fingerprint
from utils.validation import parse_int_list, parse_positive_int, sanitize_input
from words.word import EMPTY, least_period, parse_word
import logging

logger = logging.getLogger(__name__)

KINDS = ("beta", "sgap", "coded", "full", "golden-sft", "orbit", "factor")


@dataclass
class System:
    """
    A built system with everything the checks need.

    Attributes:
        spec: The spec string it was built from
        kind: One of KINDS
        language: Language oracle
        decomposition: Canonical decomposition
        exact_entropy: Entropy when known in closed form or by root finding
        source: The family object (BetaShift, SGapShift, GeneratorSet, BlockCode, ...)
        finite_automaton: Finite deterministic presentation, when one exists
        base: Source system of a factor
        factor: FactorLanguage of a factor system
    """

    spec: str
    kind: str
    language: LanguageOracle
    decomposition: Decomposition
    exact_entropy: Optional[float] = None
    source: Any = None
    finite_automaton: Optional[Automaton] = None
    base: Optional["System"] = None
    factor: Optional[FactorLanguage] = None

    @property
    def label(self) -> str:
        return self.language.name or self.spec

    @property
    def fingerprint(self) -> str:
        return self.language.family_id or compute_fingerprint({"spec": self.spec})


def _only_empty(w) -> bool:
    return not w


def _sft_decomposition(language: LanguageOracle, t: int) -> Decomposition:
    """G = L with trivial prefix and suffix collections."""
    return Decomposition(
        cp=_only_empty,
        g=language.contains,
        cs=_only_empty,
        t=t,
        per_flag=True,
        tau_of_M=lambda M: 0,
        label=language.name,
        cp_words=lambda n: frozenset([EMPTY]) if n == 0 else frozenset(),
        cs_words=lambda n: frozenset([EMPTY]) if n == 0 else frozenset(),
    )


def _build_beta(body: str, depth: int) -> System:
    shift = build_beta_shift(body, depth)
    return System(
        spec=f"beta:{body}",
        kind="beta",
        language=beta_oracle(shift),
        decomposition=beta_decomposition(shift),
        exact_entropy=shift.entropy,
        source=shift,
        finite_automaton=beta_finite_automaton(shift),
    )


def _build_sgap(body: str) -> System:
    policy = LITERAL
    if ";" in body:
        body, _, policy = body.partition(";")
        policy = policy.strip()
    body = body.strip()
    if "@" in body:
        rule, _, top = body.partition("@")
        shift = build_sgap_shift(rule=rule.strip(), max_gap=parse_positive_int(top, "max gap"), policy=policy)
    elif body in ("all", "pow2", "odd", "even"):
        shift = build_sgap_shift(rule=body, policy=policy)
    else:
        shift = build_sgap_shift(parse_int_list(body), policy=policy)

    entropy = sgap_entropy(shift)
    return System(
        spec=f"sgap:{body}" + (f";{policy}" if policy != LITERAL else ""),
        kind="sgap",
        language=sgap_oracle(shift),
        decomposition=sgap_decomposition(shift),
        exact_entropy=entropy.log_lambda,
        source=shift,
        finite_automaton=None if shift.infinite else SGapAutomaton(shift),
    )


def coded_system(gen: GeneratorSet, spec: str) -> System:
    """System for a generator set built in code."""
    return System(
        spec=spec,
        kind="coded",
        language=coded_oracle(gen),
        decomposition=coded_decomposition(gen),
        source=gen,
    )


def _build_coded(body: str) -> System:
    if Path(body).exists():
        gen = load_generators(body)
    else:
        gen = build_generator_set(parse_word(part) for part in body.split(","))
    return coded_system(gen, f"coded:{body}")


def _build_orbit(body: str) -> System:
    word = parse_word(body)
    if not word:
        raise ValidationError("Orbit word cannot be empty")
    root = word[:least_period(word)]
    gen = build_generator_set([root])
    language = coded_oracle(gen, name=f"orbit:{body}")
    return System(
        spec=f"orbit:{body}",
        kind="orbit",
        language=language,
        decomposition=coded_decomposition(gen),
        exact_entropy=0.0,
        source=gen,
        finite_automaton=language.automaton,
    )


def _build_factor(body: str, depth: int) -> System:
    if "@" not in body:
        raise ValidationError(f"Factor spec needs <code.json>@<system>, got {body!r}")
    path, _, inner = body.partition("@")
    return factor_system(load_code(path), build_system(inner, depth), f"factor:{body}")


def factor_system(code: BlockCode, base: System, spec: str) -> System:
    """Image of a built system under a block code."""
    factor = FactorLanguage(code, base.language, base.finite_automaton)
    decomposition = transport_decomposition(code, base.decomposition, base.language, factor)
    return System(
        spec=spec,
        kind="factor",
        language=factor.oracle(),
        decomposition=decomposition,
        source=code,
        base=base,
        factor=factor,
    )


def build_system(spec: str, depth: int = 64) -> System:
    """
    Build a system from its spec string.

    Args:
        spec: System spec (see module docstring)
        depth: Digits of w(beta) computed for beta shifts

    Raises:
        ValidationError: If the spec is empty or malformed
    """
    spec = sanitize_input(spec or "")
    if not spec:
        raise ValidationError("System spec cannot be empty")

    kind, _, body = spec.partition(":")
    kind = kind.strip().lower()
    body = body.strip()

    if kind == "golden-sft":
        language = golden_mean_sft()
        system = System(spec, kind, language, _sft_decomposition(language, 1),
                        exact_entropy=math.log((1 + math.sqrt(5)) / 2), finite_automaton=language.automaton)
    elif kind == "full":
        p = parse_positive_int(body or "2", "alphabet size")
        language = full_shift(p)
        system = System(f"full:{p}", kind, language, _sft_decomposition(language, 0),
                        exact_entropy=math.log(p), finite_automaton=language.automaton)
    elif not body:
        raise ValidationError(f"System spec {spec!r} needs a value after ':'")
    elif kind == "beta":
        system = _build_beta(body, depth)
    elif kind == "sgap":
        system = _build_sgap(body)
    elif kind == "coded":
        system = _build_coded(body)
    elif kind == "orbit":
        system = _build_orbit(body)
    elif kind == "factor":
        system = _build_factor(body, depth)
    else:
        raise ValidationError(f"Unknown system kind {kind!r}; expected one of {', '.join(KINDS)}")

    logger.info(f"Built system {system.label} ({system.kind}), id {system.fingerprint[:12]}")
    return system
