"""Multi-parameter filtrations of finite simplicial complexes.

Grades are tuples of exact rationals ordered coordinatewise.  A filtration
assigns every simplex a single entrance grade; the grade function must be
monotone along the face relation.  Instances are immutable after a
successful parse/validate, so concurrent reads are safe.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    DuplicateSimplexError,
    FaceClosureError,
    FiltrationError,
    GradeDimensionError,
    MonotonicityError,
    OcfParseError,
)
from .rationals import format_rational, parse_rational

Grade = tuple[Fraction, ...]
Simplex = tuple[int, ...]


def leq(u: Grade, v: Grade) -> bool:
    """Coordinatewise order: true iff u_i <= v_i for every i."""
    if len(u) != len(v):
        raise GradeDimensionError(f"grade dimensions differ: {len(u)} vs {len(v)}")
    return all(a <= b for a, b in zip(u, v))


def strictly_less(u: Grade, v: Grade) -> bool:
    """True iff u_i < v_i for every i (strict in all coordinates)."""
    if len(u) != len(v):
        raise GradeDimensionError(f"grade dimensions differ: {len(u)} vs {len(v)}")
    return all(a < b for a, b in zip(u, v))


def lub(u: Grade, v: Grade) -> Grade:
    """Coordinatewise maximum (least upper bound)."""
    if len(u) != len(v):
        raise GradeDimensionError(f"grade dimensions differ: {len(u)} vs {len(v)}")
    return tuple(max(a, b) for a, b in zip(u, v))


def simplex_dim(s: Simplex) -> int:
    return len(s) - 1


def facets(s: Simplex) -> list[Simplex]:
    """All codimension-one faces of a simplex (empty for vertices)."""
    if len(s) == 1:
        return []
    return [s[:i] + s[i + 1 :] for i in range(len(s))]


def simplex_key(s: Simplex) -> tuple:
    return (len(s), s)


def normalize_simplex(vertices: Iterable[int]) -> Simplex:
    vs = tuple(sorted(vertices))
    if len(set(vs)) != len(vs):
        raise FiltrationError(f"repeated vertex in simplex {vs}")
    if any(v < 0 for v in vs):
        raise FiltrationError(f"negative vertex id in simplex {vs}")
    if not vs:
        raise FiltrationError("empty simplex")
    return vs


class Filtration:
    """A finite simplicial complex with one entrance grade per simplex."""

    __slots__ = ("n", "_grades", "_simplices", "max_dim")

    def __init__(self, n: int, grades: Mapping[Simplex, Grade]):
        if n < 1:
            raise FiltrationError(f"parameter count must be >= 1, got {n}")
        self.n = n
        normalized: dict[Simplex, Grade] = {}
        for raw, grade in grades.items():
            s = normalize_simplex(raw)
            if s in normalized:
                raise DuplicateSimplexError(f"simplex {s} declared more than once")
            g = tuple(Fraction(x) for x in grade)
            if len(g) != n:
                raise GradeDimensionError(
                    f"simplex {s}: grade has {len(g)} coordinates, expected {n}"
                )
            normalized[s] = g
        for s, g in normalized.items():
            for f in facets(s):
                if f not in normalized:
                    raise FaceClosureError(f"simplex {s} is missing facet {f}")
                if not leq(normalized[f], g):
                    raise MonotonicityError(
                        f"facet {f} at {normalized[f]} enters after {s} at {g}"
                    )
        self._grades = normalized
        self._simplices = tuple(sorted(normalized, key=simplex_key))
        self.max_dim = max((len(s) - 1 for s in self._simplices), default=-1)

    @property
    def simplices(self) -> tuple[Simplex, ...]:
        return self._simplices

    def __len__(self) -> int:
        return len(self._simplices)

    def __contains__(self, s: Simplex) -> bool:
        return tuple(s) in self._grades

    def grade(self, s: Simplex) -> Grade:
        return self._grades[tuple(s)]

    def grades(self) -> dict[Simplex, Grade]:
        return dict(self._grades)

    def sublevel(self, u: Grade) -> frozenset[Simplex]:
        """All simplices whose entrance grade is dominated by ``u``."""
        if len(u) != self.n:
            raise GradeDimensionError(
                f"grade has {len(u)} coordinates, filtration has n={self.n}"
            )
        return frozenset(s for s, g in self._grades.items() if leq(g, u))

    def global_grade(self) -> Grade | None:
        """Lub of all entrance grades; the full complex lives there."""
        grades = iter(self._grades.values())
        try:
            acc = next(grades)
        except StopIteration:
            return None
        for g in grades:
            acc = lub(acc, g)
        return acc

    def to_ocf(self) -> str:
        lines = [f"ocf {self.n}"]
        for s in self._simplices:
            verts = " ".join(str(v) for v in s)
            grade = " ".join(format_rational(x) for x in self._grades[s])
            lines.append(f"{verts} ; {grade}")
        return "\n".join(lines) + "\n"


def parse_filtration(text: str) -> Filtration:
    """Parse the ``.ocf`` text format into a validated filtration.

    Header line is ``ocf <n>``; each following line is
    ``v0 v1 ... vk ; g1 ... gn`` with integer vertex ids and rational
    grades.  ``#`` starts a comment, line order is irrelevant.
    """
    n = None
    grades: dict[Simplex, Grade] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "ocf":
                raise OcfParseError(line_no, f"expected header 'ocf <n>', got {line!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise OcfParseError(line_no, f"parameter count is not an integer: {parts[1]!r}")
            if n < 1:
                raise OcfParseError(line_no, f"parameter count must be >= 1, got {n}")
            continue
        if ";" not in line:
            raise OcfParseError(line_no, "expected 'v0 ... vk ; g1 ... gn'")
        left, right = line.split(";", 1)
        try:
            verts = tuple(int(tok) for tok in left.split())
        except ValueError:
            raise OcfParseError(line_no, f"vertex ids must be integers: {left.strip()!r}")
        if not verts:
            raise OcfParseError(line_no, "simplex has no vertices")
        try:
            grade = tuple(parse_rational(tok) for tok in right.split())
        except ValueError as exc:
            raise OcfParseError(line_no, str(exc))
        if len(grade) != n:
            raise OcfParseError(
                line_no, f"grade has {len(grade)} coordinates, header says n={n}"
            )
        try:
            simplex = normalize_simplex(verts)
        except FiltrationError as exc:
            raise OcfParseError(line_no, str(exc))
        if simplex in grades:
            raise DuplicateSimplexError(f"line {line_no}: simplex {simplex} declared more than once")
        grades[simplex] = grade
    if n is None:
        raise OcfParseError(1, "missing 'ocf <n>' header")
    return Filtration(n, grades)


def is_face_closed(simplices: Iterable[Simplex]) -> bool:
    present = set(tuple(s) for s in simplices)
    return all(f in present for s in present for f in facets(s))
