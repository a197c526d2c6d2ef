"""Helpers for exact rationals."""
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Union

RationalLike = Union[int, str, Fraction]


def parse_rational(value: RationalLike) -> Fraction:
    """Convert an integer, a decimal string or a ``p/q`` string to a Fraction.

    Floats are refused, as their binary expansion would leak into the exact
    arithmetic.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError("Rational values must be given as integers or strings")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    text = value.strip()
    try:
        if "/" in text:
            return Fraction(text)
        return Fraction(Decimal(text))
    except (InvalidOperation, ZeroDivisionError, OverflowError, ValueError):
        # "1/0", "Infinity" and "NaN" have no rational value
        raise ValueError("Invalid rational: %r" % value) from None


def format_rational(value: Fraction) -> str:
    """Return the canonical string form, ``"3/2"`` or ``"-4"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def sgn(value: Fraction, zero: int = -1) -> int:
    """Return the sign of *value* as +1 or -1, *zero* is returned for 0."""
    if value > 0:
        return 1
    if value < 0:
        return -1
    return zero


def join(*values):
    """Lattice join, the maximum of *values*.

    Values providing their own ``join`` (see
    :class:`dehnthurston.relations.Slope`) combine themselves.
    """
    for value in values:
        combine = getattr(value, "join", None)
        if combine is not None:
            return combine(*values)
    return max(values)


def meet(*values):
    """Lattice meet, the minimum of *values*."""
    for value in values:
        combine = getattr(value, "meet", None)
        if combine is not None:
            return combine(*values)
    return min(values)


def is_integral(value: Fraction) -> bool:
    return Fraction(value).denominator == 1
