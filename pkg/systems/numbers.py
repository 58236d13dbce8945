"""
Exact arithmetic for bases beta > 1.

A base is stored as a root of an integer polynomial P (ascending
coefficients). Rational bases use a degree-1 polynomial, so every base is
handled the same way: numbers x in Q(beta) are coefficient vectors modulo P,
multiplication by beta is a companion-matrix step, and only the floor of
beta*x needs a numerical value. mpmath supplies that value at a working
precision that grows with the size of the coefficients.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math
import re
from typing import List, Sequence, Tuple

import mpmath

from config import Config
from utils.errors import PrecisionError, ValidationError
import logging

logger = logging.getLogger(__name__)

Element = Tuple[Fraction, ...]

_ROOT_SPEC = re.compile(r"^root\((?P<poly>[^,]+),\s*near\s*=\s*(?P<near>[0-9.eE+-]+)\s*\)$")
_RATIONAL_SPEC = re.compile(r"^\d+(\.\d*)?(/\d+)?$")


def parse_polynomial(text: str) -> Tuple[int, ...]:
    """
    Parse an integer polynomial in x such as "x^3-x-1" or "2*x^2 + 3x - 5".

    Returns:
        Ascending integer coefficients without trailing zeros

    Raises:
        ValidationError: On malformed terms
    """
    compact = text.replace(" ", "").replace("**", "^")
    if not compact:
        raise ValidationError("Polynomial cannot be empty")

    terms = re.findall(r"[+-]?[^+-]+", compact)
    if "".join(terms) != compact:
        raise ValidationError(f"Cannot parse polynomial {text!r}")

    coefficients = {}
    for term in terms:
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        if "x" in body:
            coef_text, _, power_text = body.partition("x")
            coef_text = coef_text.rstrip("*")
            if power_text and not re.match(r"^\^\d+$", power_text):
                raise ValidationError(f"Bad exponent in term {term!r}")
            power = int(power_text[1:]) if power_text else 1
        else:
            coef_text, power = body, 0
        if coef_text and not coef_text.isdigit():
            raise ValidationError(f"Bad coefficient in term {term!r}")
        coef = int(coef_text) if coef_text else 1
        coefficients[power] = coefficients.get(power, 0) + sign * coef

    degree = max((p for p, c in coefficients.items() if c != 0), default=-1)
    if degree < 1:
        raise ValidationError(f"Polynomial {text!r} must have degree at least 1")

    return tuple(coefficients.get(p, 0) for p in range(degree + 1))


@dataclass(frozen=True)
class BetaNumber:
    """A real base beta > 1 given exactly as a root of an integer polynomial."""

    spec: str
    poly: Tuple[int, ...]
    near: Fraction

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def value(self, prec: int = 0) -> mpmath.mpf:
        """Numerical value at prec bits (cached per precision)."""
        return _root_value(self.poly, self.near, max(prec, 53))

    def __float__(self) -> float:
        return float(self.value(64))

    @property
    def log(self) -> float:
        """Natural logarithm of beta (the entropy of the beta shift)."""
        return float(mpmath.log(self.value(128)))


@lru_cache(maxsize=256)
def _root_value(poly: Tuple[int, ...], near: Fraction, prec: int) -> mpmath.mpf:
    with mpmath.workprec(prec + 16):
        if len(poly) == 2:
            root = mpmath.mpf(-poly[0]) / poly[1]
        else:
            descending = list(reversed(poly))
            root = mpmath.findroot(lambda x: mpmath.polyval(descending, x),
                                   mpmath.mpf(near.numerator) / near.denominator)
        return +root


def parse_beta(spec: str) -> BetaNumber:
    """
    Parse a base specification.

    Accepted forms: "golden", a decimal literal ("1.8"), a fraction ("9/5"),
    an integer, or "root(<poly>, near=<x>)".

    Raises:
        ValidationError: On malformed input or beta <= 1
    """
    text = spec.strip()
    if not text:
        raise ValidationError("Beta specification cannot be empty")

    if text.lower() in ("golden", "phi"):
        number = BetaNumber("golden", (-1, -1, 1), Fraction(16, 10))
    elif _RATIONAL_SPEC.match(text):
        value = Fraction(text)
        number = BetaNumber(text, (-value.numerator, value.denominator), value)
    else:
        match = _ROOT_SPEC.match(text)
        if not match:
            raise ValidationError(f"Cannot parse beta specification {spec!r}")
        poly = parse_polynomial(match.group("poly"))
        near = Fraction(match.group("near"))
        number = BetaNumber(text, poly, near)
        value = number.value(128)
        with mpmath.workprec(128):
            residual = abs(mpmath.polyval(list(reversed(poly)), value))
        if residual > mpmath.mpf(2) ** -64:
            raise ValidationError(f"No root of {match.group('poly')} found near {near}")

    if number.value(64) <= 1:
        raise ValidationError(f"Beta must be > 1, got {spec!r}")

    logger.debug(f"Parsed beta {spec!r} as root of {number.poly}")
    return number


def _poly_trim(a: List[Fraction]) -> List[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a = _poly_trim(list(a))
    while len(a) >= len(b) and a:
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, coef in enumerate(b):
            a[shift + i] -= factor * coef
        a = _poly_trim(a)
    return a


def _poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b)
    return a


class BetaField:
    """Arithmetic in Q(beta) = Q[x]/(P) for one base."""

    def __init__(self, beta: BetaNumber):
        self.beta = beta
        self.degree = beta.degree
        lead = Fraction(beta.poly[-1])
        # x^d = sum reduction[i] * x^i
        self.reduction = tuple(Fraction(-c) / lead for c in beta.poly[:-1])

    def one(self) -> Element:
        return (Fraction(1),) + (Fraction(0),) * (self.degree - 1)

    def mul_beta(self, x: Element) -> Element:
        top = x[-1]
        shifted = (Fraction(0),) + x[:-1]
        if top == 0:
            return shifted
        return tuple(c + top * r for c, r in zip(shifted, self.reduction))

    def sub_int(self, x: Element, k: int) -> Element:
        return (x[0] - k,) + x[1:]

    def is_zero(self, x: Element) -> bool:
        return all(c == 0 for c in x)

    def evaluate(self, x: Element, prec: int) -> mpmath.mpf:
        beta = self.beta.value(prec)
        with mpmath.workprec(prec):
            total = mpmath.mpf(0)
            power = mpmath.mpf(1)
            for c in x:
                if c:
                    total += power * c.numerator / c.denominator
                power *= beta
            return +total

    def _coefficient_bits(self, x: Element) -> int:
        return max((abs(c.numerator).bit_length() + c.denominator.bit_length() for c in x if c), default=1)

    def _vanishes(self, x: Element) -> bool:
        """Exact test that x = 0 when P may be reducible: beta must be a root of gcd(P, x)."""
        if self.is_zero(x):
            return True
        common = _poly_gcd([Fraction(c) for c in self.beta.poly], list(x))
        if len(common) < 2:
            return False
        prec = Config.BETA_PRECISION_BITS
        with mpmath.workprec(prec):
            value = mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in reversed(common)],
                                   self.beta.value(prec))
        return abs(value) < mpmath.mpf(2) ** (-prec // 2)

    def floor(self, x: Element, min_prec: int = 0) -> int:
        """
        Exact floor of x.

        Rational bases are exact. Otherwise the value is computed at a
        precision covering the coefficient size; a value within 2^(-prec/2)
        of an integer m is accepted only if x - m vanishes exactly.

        Raises:
            PrecisionError: If the floor cannot be decided
        """
        if self.degree == 1:
            return math.floor(x[0])

        prec = max(Config.BETA_PRECISION_BITS, min_prec, self._coefficient_bits(x) + 64)
        for attempt in range(4):
            value = self.evaluate(x, prec)
            nearest = int(mpmath.nint(value))
            tolerance = mpmath.mpf(2) ** (-prec // 2)
            if abs(value - nearest) > tolerance:
                return int(mpmath.floor(value))
            if self._vanishes(self.sub_int(x, nearest)):
                return nearest
            prec *= 2
        raise PrecisionError(
            f"Cannot decide floor of a number within {float(tolerance):.3g} of {nearest} for beta {self.beta.spec}"
        )
