"""Parsing and serialization of exact rationals.

The wire format is the string ``"p/q"`` with ``q > 0`` and ``gcd(p, q) = 1``;
plain integers are accepted on input and written as ``"p/1"`` on output so
that serialized files are byte-stable.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError


def parse_rational(text: str | int, path: str | None = None) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError("bad-rational", f"cannot parse rational {text!r}: {exc}", path)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"
