"""Helpers around exact rational scalars.

All quantities in this library are :class:`fractions.Fraction` values;
floating point is never used (suprema and boundary comparisons must be
exact).  The canonical text form is ``"p/q"`` with ``gcd(p, q) = 1`` and
``q > 0``; plain integers render without the ``/q`` part, so ``"0"`` and
``"3"`` are valid.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParameterError

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ``value`` (Fraction, int, or ``"p/q"`` string) to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError(f"not a rational: {value!r}") from exc
    raise ParameterError(f"cannot interpret {value!r} as a rational")


def as_nonnegative(value) -> Fraction:
    q = as_rational(value)
    if q < 0:
        raise ParameterError(f"expected a non-negative rational, got {q}")
    return q


def rational_str(value: Fraction) -> str:
    """Canonical string form, ``"p/q"`` or ``"p"`` for integers."""
    return str(value)


def lcm_denominator(values) -> int:
    """Least common multiple of the denominators of ``values``."""
    from math import lcm

    result = 1
    for v in values:
        result = lcm(result, v.denominator)
    return result
