"""Exact scalars: :class:`fractions.Fraction` with a width guard.

Python integers never wrap, so "overflow" here means a numerator or
denominator grew past ``max_bits`` bits.  Every constructor in the
toolkit that stores rationals passes them through :func:`checked`.
"""

from __future__ import annotations

import contextlib
import os
from fractions import Fraction
from typing import Iterable

from .errors import RationalOverflow

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_BITS = 128


def env_bits() -> int:
    """Limit from HECKE_MAX_BITS, read fresh each call."""
    return int(os.environ.get("HECKE_MAX_BITS", DEFAULT_BITS))


_max_bits = env_bits()


def max_bits() -> int:
    return _max_bits


@contextlib.contextmanager
def bit_limit(bits: int):
    """Temporarily change the width guard (tests use this for the error path)."""
    global _max_bits
    old = _max_bits
    _max_bits = bits
    try:
        yield
    finally:
        _max_bits = old


def checked(q: Fraction) -> Fraction:
    if q.numerator.bit_length() >= _max_bits or q.denominator.bit_length() >= _max_bits:
        raise RationalOverflow(
            f"rational {q} exceeds {_max_bits}-bit component limit")
    return q


def checked_all(values: Iterable[Fraction]) -> tuple[Fraction, ...]:
    lim = _max_bits
    out = tuple(values)
    for q in out:
        if q.numerator.bit_length() >= lim or q.denominator.bit_length() >= lim:
            raise RationalOverflow(
                f"rational {q} exceeds {lim}-bit component limit")
    return out


def parse_rational(text: str) -> Fraction:
    """Parse ``"n/d"`` or ``"n"``; raises ValueError on malformed input."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    if "/" in text:
        num, den = text.split("/", 1)
        d = int(den)
        if d == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return checked(Fraction(int(num), d))
    return checked(Fraction(int(text)))


def fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
