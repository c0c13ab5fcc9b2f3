"""Line signatures, equivalence classes, closed-form fiber diagrams, and
diagram transfer between equivalent lines.

A line's signature records, for every closed critical value, which open
cone face its push lands on.  Lines with equal signatures restrict the
module to isomorphic one-parameter slices, so one diagram per class is
enough: any other member's diagram is obtained by pushing floors onto it.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

from .diagram import DiagramPoint, FiberDiagram
from .errors import LineEquivalenceError, MorsefiberError
from .filtration import Grade, leq
from .lines import Line, cone_faces_intersect, push
from .rank_invariant import ClosedCriticalSet, RankEngine
from .rationals import format_rational


class LineSignature:
    """Map from each closed critical value to the cone face its push hits."""

    __slots__ = ("faces",)

    def __init__(self, faces: dict[Grade, frozenset[int]]):
        self.faces = dict(faces)

    def __eq__(self, other):
        return isinstance(other, LineSignature) and self.faces == other.faces

    def __hash__(self):
        return hash(frozenset(self.faces.items()))

    def canonical_encoding(self) -> str:
        parts = []
        for grade in sorted(self.faces):
            coords = ",".join(format_rational(x) for x in grade)
            face = ",".join(str(i) for i in sorted(self.faces[grade]))
            parts.append(f"{coords}->{face}")
        return ";".join(parts)

    def class_id(self) -> str:
        digest = hashlib.blake2b(
            self.canonical_encoding().encode("utf-8"), digest_size=8
        )
        return digest.hexdigest()


def signature(cbar: ClosedCriticalSet, line: Line) -> LineSignature:
    return LineSignature({c: push(line, c).face for c in cbar})


def equivalent(cbar: ClosedCriticalSet, a: Line, b: Line) -> bool:
    return signature(cbar, a) == signature(cbar, b)


def push_ceiling(cbar: ClosedCriticalSet, line: Line, u: Grade) -> Grade:
    """Greatest closed critical value above ``u`` landing on the same
    pushed point of the line (their cone faces overlap along it).

    Equals floor(push(u)); both routes are kept and cross-checked in the
    tests.
    """
    u = tuple(u)
    if u not in cbar:
        raise MorsefiberError(f"{u} is not a closed critical value")
    face_u = push(line, u).face
    candidates = [
        c
        for c in cbar
        if leq(u, c) and cone_faces_intersect(u, face_u, c, push(line, c).face)
    ]
    for c in candidates:
        if all(leq(other, c) for other in candidates):
            return c
    raise MorsefiberError("no maximum among overlapping critical values")


@dataclass(frozen=True)
class PushedCritical:
    """One stop on the line: a pushed critical value with its floor."""

    t: Fraction
    point: Grade
    floor: Grade


def pushed_criticals(cbar: ClosedCriticalSet, line: Line) -> tuple[PushedCritical, ...]:
    """Deduplicated push images of the closed critical values, increasing
    along the line, each carrying its floor."""
    by_t: dict[Fraction, Grade] = {}
    for c in cbar:
        result = push(line, c)
        by_t[result.t] = result.point
    stops = []
    for t in sorted(by_t):
        point = by_t[t]
        floor = cbar.floor(point)
        if floor is None:
            raise MorsefiberError("pushed critical value dominates no critical value")
        stops.append(PushedCritical(t=t, point=point, floor=floor))
    return tuple(stops)


def fiber_diagram(engine: RankEngine, line: Line, degrees) -> FiberDiagram:
    """Persistence diagram of the restriction to ``line``, in closed form.

    Multiplicities are inclusion-exclusion differences of ranks at
    consecutive pushed critical values, with a zero sentinel before the
    first stop; essential classes are counted against the last stop.
    """
    degrees = sorted(set(degrees))
    stops = pushed_criticals(engine.cbar, line)
    m = len(stops)
    points: list[DiagramPoint] = []
    for dim in degrees:
        def rho(i: int, j: int) -> int:
            # 1-based stop indices; index 0 is the "before anything" sentinel.
            if i == 0:
                return 0
            return engine.rank_at_floors(dim, stops[i - 1].floor, stops[j - 1].floor)

        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                mult = rho(i, j - 1) - rho(i - 1, j - 1) - rho(i, j) + rho(i - 1, j)
                if mult > 0:
                    points.append(
                        DiagramPoint(
                            dim=dim,
                            birth_t=stops[i - 1].t,
                            death_t=stops[j - 1].t,
                            birth_point=stops[i - 1].point,
                            death_point=stops[j - 1].point,
                            multiplicity=mult,
                        )
                    )
            essential = rho(i, m) - rho(i - 1, m)
            if essential > 0:
                points.append(
                    DiagramPoint(
                        dim=dim,
                        birth_t=stops[i - 1].t,
                        death_t=None,
                        birth_point=stops[i - 1].point,
                        death_point=None,
                        multiplicity=essential,
                    )
                )
    return FiberDiagram.build(line, degrees, points)


def transfer(
    cbar: ClosedCriticalSet, diagram: FiberDiagram, target: Line
) -> FiberDiagram:
    """Carry a diagram from its line to an equivalent one.

    Every endpoint maps to the push, onto the target, of the floor of its
    ambient point; infinities stay infinite and multiplicities are kept.
    """
    if not equivalent(cbar, diagram.line, target):
        raise LineEquivalenceError("lines do not share a signature class")

    def carry(point: Grade):
        floor = cbar.floor(point)
        if floor is None:
            raise MorsefiberError("diagram endpoint dominates no critical value")
        return push(target, floor)

    points = []
    for p in diagram.points:
        birth = carry(p.birth_point)
        death = None if p.death_point is None else carry(p.death_point)
        points.append(
            DiagramPoint(
                dim=p.dim,
                birth_t=birth.t,
                death_t=None if death is None else death.t,
                birth_point=birth.point,
                death_point=None if death is None else death.point,
                multiplicity=p.multiplicity,
            )
        )
    return FiberDiagram.build(target, diagram.degrees, points)
