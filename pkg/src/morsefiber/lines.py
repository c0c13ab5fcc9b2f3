"""Positive-slope lines in the parameter space and the push operator.

A line is parametrized as ``u = direction * t + base`` with every
direction coordinate strictly positive.  Pushing a point onto a line
means taking the earliest line point that dominates it; the push lands
on exactly one open face of the boundary of the point's positive cone,
recorded as the ``face`` index set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import GradeDimensionError, NonPositiveSlopeError
from .filtration import Grade
from .rationals import format_vector, parse_vector


@dataclass(frozen=True)
class Line:
    base: Grade
    direction: Grade

    def __post_init__(self):
        if len(self.base) != len(self.direction):
            raise GradeDimensionError(
                f"base has {len(self.base)} coordinates, direction {len(self.direction)}"
            )
        if not self.base:
            raise GradeDimensionError("line needs at least one coordinate")
        if any(m <= 0 for m in self.direction):
            raise NonPositiveSlopeError(
                "direction must be strictly positive in every coordinate"
            )

    @property
    def n(self) -> int:
        return len(self.base)

    def at(self, t: Fraction) -> Grade:
        return tuple(b + m * t for b, m in zip(self.base, self.direction))

    def t_of(self, point: Grade) -> Fraction:
        """Parameter of a point assumed to lie on the line."""
        return (point[0] - self.base[0]) / self.direction[0]

    def literal(self) -> str:
        base = ",".join(format_vector(self.base))
        direction = ",".join(format_vector(self.direction))
        return f"base={base} dir={direction}"


@dataclass(frozen=True)
class PushResult:
    point: Grade
    t: Fraction
    face: frozenset[int]


def push(line: Line, u: Grade) -> PushResult:
    """Earliest point of the line dominating ``u``.

    The parameter is ``t = max_i (u_i - base_i) / dir_i`` and the face is
    the argmax set: exactly the coordinates where the pushed point still
    equals ``u``.
    """
    if len(u) != line.n:
        raise GradeDimensionError(f"point has {len(u)} coordinates, line has {line.n}")
    ratios = [(ui - bi) / mi for ui, bi, mi in zip(u, line.base, line.direction)]
    t = max(ratios)
    face = frozenset(i for i, r in enumerate(ratios) if r == t)
    return PushResult(point=line.at(t), t=t, face=face)


def entrance_t(line: Line, u: Grade) -> Fraction:
    """Smallest t with ``u`` dominated by the line point at t."""
    return max((ui - bi) / mi for ui, bi, mi in zip(u, line.base, line.direction))


def cone_faces_intersect(u: Grade, face_u: frozenset[int], v: Grade, face_v: frozenset[int]) -> bool:
    """Whether the open cone faces S_A(u) and S_B(v) share a point.

    A point exists iff coordinates in both face sets agree exactly, and a
    coordinate fixed by only one of the faces strictly exceeds the other
    point's value there.
    """
    for i in range(len(u)):
        in_a = i in face_u
        in_b = i in face_v
        if in_a and in_b:
            if u[i] != v[i]:
                return False
        elif in_a:
            if not u[i] > v[i]:
                return False
        elif in_b:
            if not v[i] > u[i]:
                return False
    return True


def parse_line_literal(text: str, n: int | None = None) -> Line:
    """Parse ``base=<r1,...,rn> dir=<r1,...,rn>`` into a Line."""
    fields: dict[str, str] = {}
    for tok in text.split():
        if "=" not in tok:
            raise ValueError(f"expected key=value tokens, got {tok!r}")
        key, value = tok.split("=", 1)
        if key in fields:
            raise ValueError(f"repeated field {key!r}")
        fields[key] = value
    if set(fields) != {"base", "dir"}:
        raise ValueError(f"line literal needs base= and dir=, got {sorted(fields)}")
    base = parse_vector(fields["base"], n)
    direction = parse_vector(fields["dir"], n)
    return Line(base=base, direction=direction)
