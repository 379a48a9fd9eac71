"""Scalar backend for exact rational arithmetic.

The compiled ``gmpy2.mpq`` type is used when it can be imported; otherwise the
pure-Python ``fractions.Fraction`` is used.  The choice is made once at import
and is exposed as ``BACKEND``.
"""
from __future__ import annotations

from fractions import Fraction

try:  # pragma: no cover - exercised implicitly by whichever backend is present
    from gmpy2 import mpq as _mpq

    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover
    _mpq = None
    BACKEND = "fractions"

Q = _mpq if _mpq is not None else Fraction
ZERO = Q(0)
ONE = Q(1)


def as_q(value) -> "Q":
    """Coerce an int, Fraction, string like '3/4', or backend rational to Q."""
    if isinstance(value, Q):
        return value
    if isinstance(value, str):
        return Q(Fraction(value))
    return Q(value)


def to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))
