"""Exact rational values at the JSON boundary."""

from __future__ import annotations

from fractions import Fraction


def parse_rational(value: object) -> Fraction:
    """Coerce ``value`` to an exact :class:`Fraction`.

    Accepts Fractions, ints, and strings such as ``"3/8"`` or ``"2"``.
    Floats are rejected: they would smuggle binary rounding into code that
    relies on exact equality.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Canonical ``a/b`` form: gcd(a, b) = 1 and b > 0, denominator always shown."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"
