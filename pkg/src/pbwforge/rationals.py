"""Exact rational scalars.

Every number in the engine is an arbitrary-precision rational; nothing is
ever rounded.  ``gmpy2.mpq`` is used when available (it is a drop-in,
much faster implementation of the same arithmetic), with
``fractions.Fraction`` as the pure-Python fallback.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    Q = Fraction

RationalLike = Union[int, str, Fraction, "Q"]

ZERO = Q(0)
ONE = Q(1)
HALF = Q(1, 2)


def rational(value: RationalLike) -> Q:
    """Coerce ``value`` to an exact rational.

    Accepts ints, rationals, and strings of the form ``"p"`` or ``"p/q"``.
    Parsing is exact; anything else (floats in particular) is rejected.
    """
    if isinstance(value, (int, Fraction)) or type(value) is type(ZERO):
        return Q(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            d = int(den)
            if d == 0:
                raise ValueError(f"zero denominator in rational literal {value!r}")
            return Q(int(num), d)
        return Q(int(text))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value) -> str:
    """Render a rational as ``"p"`` or ``"p/q"`` (lowest terms, q > 0)."""
    q = Q(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
