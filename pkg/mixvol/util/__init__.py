import re
from fractions import Fraction
from numbers import Rational
from typing import (
    Iterable,
    Tuple,
    Union,
)

RationalLike = Union[int, str, Fraction, Rational]

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")


def as_rational(value: RationalLike) -> Fraction:
    """
    Convert ``value`` to an exact rational number.

    :type value: int, str or Fraction
    :param value: An integer, a rational string (``"p/q"`` or ``"p"``) or any
      ``numbers.Rational`` instance. Floats are refused, and so are decimal
      and exponent strings such as ``"1.5"`` or ``"1e3"``.

    :rtype: Fraction
    :return: The value in lowest terms with a positive denominator.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"Expected an exact rational, got {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL.fullmatch(text):
            raise ValueError(f"Not a rational number of the form p/q or p: {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError(f"Zero denominator in {value!r}")
    raise TypeError(f"Expected an exact rational, got {value!r}")


def as_rational_tuple(values: Iterable[RationalLike]) -> Tuple[Fraction, ...]:
    return tuple(as_rational(v) for v in values)


def format_rational(value: Fraction) -> str:
    """
    Format a rational in lowest terms as ``"p/q"``, or ``"p"`` for integers.
    """
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


__all__ = (
    "RationalLike",
    "as_rational",
    "as_rational_tuple",
    "format_rational",
)
