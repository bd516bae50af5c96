"""Exact rational scalars and their repo-wide text format.

Every coordinate, weight, measure and function value in this package is a
``fractions.Fraction``.  The serialization convention is ``"p/q"`` in lowest
terms, with ``"p"`` alone for integers; no floating point appears anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = ["DomainError", "parse_rational", "format_rational"]


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` (or a bare integer ``"p"``) into an exact fraction."""
    token = text.strip()
    if not _RATIONAL_RE.match(token):
        raise DomainError(f"not a rational token: {text!r}")
    if "/" in token:
        num, den = token.split("/")
        if int(den) == 0:
            raise DomainError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(token))


def format_rational(value: Fraction | int) -> str:
    """Render a rational in lowest terms as ``"p/q"``, or ``"p"`` if integral."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
