"""Exact scalar helpers: coercion, rational parsing, square roots, JSON encoding.

The library computes in ``fractions.Fraction`` wherever the mathematics is
polynomial, so identities can be asserted with zero tolerance.  Floats only
appear where genuine irrationals enter (cubic roots, sphere spectra).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import UsageError

Scalar = object  # Fraction | int | float; kept loose on purpose


def coerce(x):
    """Normalize a scalar: ints and strings become Fractions, floats stay floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise UsageError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    raise UsageError(f"cannot interpret {x!r} as a scalar")


def coerce_triple(values):
    """Coerce a length-3 sequence of scalars."""
    t = tuple(coerce(v) for v in values)
    if len(t) != 3:
        raise UsageError(f"expected a triple, got {len(t)} values")
    return t


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal: '3', '-4/5', '0.25' are all accepted."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational literal: {text!r}") from exc


def exact_sqrt(x: Fraction):
    """Return sqrt(x) as a Fraction if x is a perfect rational square, else None."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn = math.isqrt(num)
    rd = math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def sqrt_any(x):
    """Exact square root when possible, float square root otherwise."""
    if isinstance(x, Fraction):
        r = exact_sqrt(x)
        if r is not None:
            return r
        return math.sqrt(x)
    return math.sqrt(x)


def sign(x) -> int:
    """-1, 0 or +1; exact for Fractions."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def encode_scalar(x):
    """JSON-safe encoding: Fractions become 'p/q' strings, floats stay floats."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(Fraction(x))
    return x


def decode_scalar(x):
    """Inverse of encode_scalar for round-tripping JSON payloads."""
    if isinstance(x, str):
        return Fraction(x)
    return x
