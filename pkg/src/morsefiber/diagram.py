"""Persistence diagrams of a filtration restricted to a line."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .filtration import Grade
from .lines import Line


@dataclass(frozen=True)
class DiagramPoint:
    """One multiset point: a class of dimension ``dim`` born at ``birth_t``
    and dying at ``death_t`` (None = essential), with positive multiplicity.
    Ambient coordinates are the corresponding points on the line."""

    dim: int
    birth_t: Fraction
    death_t: Fraction | None
    birth_point: Grade
    death_point: Grade | None
    multiplicity: int

    def sort_key(self):
        return (self.dim, self.birth_t, self.death_t is None, self.death_t or 0)


@dataclass(frozen=True)
class FiberDiagram:
    line: Line
    degrees: tuple[int, ...]
    points: tuple[DiagramPoint, ...]

    @staticmethod
    def build(line: Line, degrees, points) -> "FiberDiagram":
        return FiberDiagram(
            line=line,
            degrees=tuple(sorted(set(degrees))),
            points=tuple(sorted(points, key=DiagramPoint.sort_key)),
        )

    def multiset(self) -> tuple:
        """Comparison view: (dim, birth, death, multiplicity) sorted."""
        return tuple(
            (p.dim, p.birth_t, p.death_t, p.multiplicity)
            for p in sorted(self.points, key=DiagramPoint.sort_key)
        )

    def restricted(self, degrees) -> "FiberDiagram":
        keep = set(degrees)
        return FiberDiagram.build(
            self.line, keep, [p for p in self.points if p.dim in keep]
        )
