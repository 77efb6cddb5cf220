import re
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

from .errors import InvalidInputError

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]

_RATIONAL = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_scalar(text: str) -> Fraction:
    """Parse an exact rational literal: optional sign, integer, optional "/" positive integer."""
    match = _RATIONAL.match(text.strip())
    if match is None:
        raise InvalidInputError(f"not a rational literal: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise InvalidInputError(f"zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def as_scalar(value: ScalarLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInputError(f"booleans are not scalars: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise InvalidInputError(f"cannot read {value!r} as an exact rational")


def format_scalar(value: Fraction) -> str:
    """Canonical output: lowest terms, positive denominator, no denominator for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_scalar_list(text: str) -> tuple[Fraction, ...]:
    if not text.strip():
        return ()
    return tuple(parse_scalar(part) for part in text.split(","))


def rational_sqrt(value: Fraction) -> Optional[Fraction]:
    """Exact square root if ``value`` is the square of a rational, else None."""
    value = Fraction(value)
    if value < 0:
        return None
    num_root = isqrt(value.numerator)
    den_root = isqrt(value.denominator)
    if num_root * num_root != value.numerator or den_root * den_root != value.denominator:
        return None
    return Fraction(num_root, den_root)
