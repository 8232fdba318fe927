"""Rendering and parsing of exact rationals."""

from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Context, Decimal, localcontext
from fractions import Fraction

DEFAULT_DIGITS = 6


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _to_decimal(q: Fraction, prec: int) -> Decimal:
    with localcontext(Context(prec=prec, rounding=ROUND_HALF_EVEN)):
        return Decimal(q.numerator) / Decimal(q.denominator)


def to_sig(q, digits: int = DEFAULT_DIGITS) -> str:
    """Decimal string of ``q`` rounded to ``digits`` significant digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    q = as_fraction(q)
    if q == 0:
        return "0"
    d = _to_decimal(q, digits)
    # avoid exponent notation for the magnitudes that appear in practice
    if -7 < d.adjusted() < 21:
        s = format(d, "f")
    else:
        s = str(d)
    return s


def round_places(q, places: int) -> Decimal:
    """Round ``q`` half-even to ``places`` digits after the decimal point."""
    q = as_fraction(q)
    quantum = Decimal(1).scaleb(-places)
    whole = abs(q.numerator) // q.denominator
    prec = len(str(whole)) + places + 5
    with localcontext(Context(prec=prec, rounding=ROUND_HALF_EVEN)):
        return _to_decimal(q, prec).quantize(quantum)


def fmt(q, digits: int = DEFAULT_DIGITS) -> str:
    """``"p/q (decimal)"`` rendering used in reports."""
    q = as_fraction(q)
    return f"{q} ({to_sig(q, digits)})"


def parse_rational(token: str) -> Fraction:
    """Parse ``"p/q"`` or an integer token."""
    token = token.strip()
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {token!r}") from exc
