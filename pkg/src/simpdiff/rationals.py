"""Exact rational scalars and their text encoding.

All coefficients in the package are :class:`fractions.Fraction`.  On the wire
they travel as ``"p/q"`` strings (or ``"p"`` for integers).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Q = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)

RationalLike = Union[int, str, Fraction]


def parse_rational(value: RationalLike) -> Fraction:
    """Parse an int, a Fraction or a ``"p/q"`` string.

    Floats are refused on purpose: they would smuggle rounding into exact code.
    """
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational {value!r}") from exc
    raise ValueError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
