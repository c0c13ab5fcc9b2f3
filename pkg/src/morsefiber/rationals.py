"""Exact rational parsing and formatting shared by file formats, CLI and API.

Only integers and ``p/q`` fractions are accepted; decimal notation is
rejected so no float ever sneaks into an order decision.
"""

from __future__ import annotations

import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not an integer or p/q rational: {text!r}")
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(value: Fraction) -> str:
    # Fraction.__str__ already renders "p" when the denominator is 1.
    return str(value)


def parse_vector(text: str, n: int | None = None, sep: str = ",") -> tuple[Fraction, ...]:
    """Parse a separator-joined rational vector such as ``1/2,3``."""
    parts = text.split(sep)
    vec = tuple(parse_rational(p) for p in parts)
    if n is not None and len(vec) != n:
        raise ValueError(f"expected {n} coordinates, got {len(vec)}: {text!r}")
    return vec


def format_vector(vec) -> list[str]:
    return [format_rational(x) for x in vec]
