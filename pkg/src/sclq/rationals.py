"""Exact rational arithmetic backend.

Everything in this package computes over Q. gmpy2.mpq is used when available
(it is several times faster than fractions.Fraction on the pivot-heavy linear
programs); the stdlib Fraction is a drop-in fallback. Both expose .numerator
and .denominator and normalize automatically, which is all the callers rely on.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rat

ZERO = Rat(0)
ONE = Rat(1)


def rat(numerator, denominator=1):
    """Build a rational; accepts ints, rationals, or "p/q" / "p" strings."""
    if isinstance(numerator, str):
        text = numerator.strip()
        if "/" in text:
            p, q = text.split("/", 1)
            return Rat(int(p), int(q))
        return Rat(int(text))
    if denominator == 1:
        return Rat(numerator)
    return Rat(numerator, denominator)


def fmt(value, strict: bool = False) -> str:
    """Render exactly. strict=True always includes the denominator ("3/1")."""
    num, den = value.numerator, value.denominator
    if strict or den != 1:
        return f"{num}/{den}"
    return str(num)


def is_integral(value) -> bool:
    return value.denominator == 1
