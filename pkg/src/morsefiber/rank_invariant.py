"""Critical values, their lub-closure, and rank-invariant evaluation.

The rank of the inclusion-induced map between any two comparable grades
is fully determined by the greatest closure elements they dominate
("floors"), so ranks are memoized on floor pairs and every sublevel
complex is materialized at most once per floor.
"""

from __future__ import annotations

import os
import threading
from typing import Iterable

from . import homology
from .dgvf import VectorField, build_consistent_dgvf, check_acyclic, check_consistent, check_matching, critical_cells
from .errors import ClosureCapError, EmptyCriticalSetError, GradeDimensionError, VectorFieldError
from .filtration import Filtration, Grade, leq, lub

DEFAULT_CLOSURE_CAP = 50_000


def _closure_cap(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("MF_CBAR_CAP")
    return int(env) if env else DEFAULT_CLOSURE_CAP


def critical_values(filtration: Filtration, field: VectorField) -> frozenset[Grade]:
    """Entrance grades of the unpaired cells, deduplicated."""
    crit = critical_cells(filtration.simplices, field)
    return frozenset(filtration.grade(s) for s in crit.cells)


class ClosedCriticalSet:
    """A finite grade set closed under least upper bound."""

    __slots__ = ("n", "base", "grades", "axis_values")

    def __init__(self, n: int, base: frozenset[Grade], closed: frozenset[Grade]):
        self.n = n
        self.base = base
        self.grades = tuple(sorted(closed))
        # Sorted unique coordinates per axis, for cheap dominance rejection.
        self.axis_values = tuple(
            tuple(sorted({g[i] for g in closed})) for i in range(n)
        ) if closed else tuple(() for _ in range(n))

    def __len__(self):
        return len(self.grades)

    def __iter__(self):
        return iter(self.grades)

    def __contains__(self, grade: Grade) -> bool:
        return tuple(grade) in self._as_set()

    def _as_set(self) -> frozenset[Grade]:
        return frozenset(self.grades)

    @classmethod
    def empty(cls, n: int) -> "ClosedCriticalSet":
        return cls(n, frozenset(), frozenset())

    def floor(self, u: Grade) -> Grade | None:
        """Greatest element dominated by ``u``; None when nothing is.

        The dominated subset is closed under lub, so its coordinatewise
        maximum is itself a member and is the unique maximum.
        """
        if len(u) != self.n:
            raise GradeDimensionError(f"grade has {len(u)} coordinates, expected {self.n}")
        if not self.grades:
            return None
        for i in range(self.n):
            if u[i] < self.axis_values[i][0]:
                return None
        best: Grade | None = None
        for g in self.grades:
            if leq(g, u):
                best = g if best is None else lub(best, g)
        return best


def lub_closure(grades: Iterable[Grade], cap: int | None = None) -> ClosedCriticalSet:
    """Smallest superset closed under pairwise lub, by fixpoint iteration."""
    base = frozenset(tuple(g) for g in grades)
    if not base:
        raise EmptyCriticalSetError("cannot close an empty critical-value set")
    n = len(next(iter(base)))
    limit = _closure_cap(cap)
    closed = set(base)
    frontier = list(base)
    while frontier:
        fresh = []
        for g in frontier:
            for h in closed.copy():
                j = lub(g, h)
                if j not in closed:
                    closed.add(j)
                    fresh.append(j)
                    if len(closed) > limit:
                        raise ClosureCapError(
                            f"lub-closure exceeded cap of {limit} grades; "
                            "raise MF_CBAR_CAP or pass a larger cap"
                        )
        frontier = fresh
    return ClosedCriticalSet(n, base, frozenset(closed))


class RankEngine:
    """Rank-invariant evaluation for one filtration and gradient field.

    Immutable after construction; the rank memo allows concurrent readers
    and idempotent duplicate inserts.
    """

    def __init__(
        self,
        filtration: Filtration,
        field: VectorField | None = None,
        *,
        validate: bool = True,
        closure_cap: int | None = None,
    ):
        self.filtration = filtration
        self.field = build_consistent_dgvf(filtration) if field is None else field
        if validate:
            problems = check_matching(filtration.simplices, self.field)
            if problems:
                raise VectorFieldError("; ".join(problems))
            if not check_acyclic(filtration.simplices, self.field):
                raise VectorFieldError("field has a closed V-path")
            if not check_consistent(filtration, self.field):
                raise VectorFieldError("field pairs cells with different grades")
        self.critical = critical_cells(filtration.simplices, self.field)
        values = critical_values(filtration, self.field)
        if len(filtration) and not values:
            raise EmptyCriticalSetError("nonempty complex but no critical values")
        if values:
            self.cbar = lub_closure(values, cap=closure_cap)
        else:
            self.cbar = ClosedCriticalSet.empty(filtration.n)
        self._complexes: dict[Grade, frozenset] = {}
        self._ranks: dict[tuple, int] = {}
        self._lock = threading.Lock()

    def floor(self, u: Grade) -> Grade | None:
        return self.cbar.floor(u)

    def complex_at(self, grade: Grade) -> frozenset:
        got = self._complexes.get(grade)
        if got is None:
            got = self.filtration.sublevel(grade)
            with self._lock:
                got = self._complexes.setdefault(grade, got)
        return got

    def rank(self, i: int, u: Grade, v: Grade) -> int:
        """rank of H_i at u mapping into H_i at v, for u dominated by v."""
        if not leq(u, v):
            raise GradeDimensionError("rank requires u coordinatewise below v")
        floor_u = self.floor(u)
        if floor_u is None:
            return 0
        return self.rank_at_floors(i, floor_u, self.floor(v))

    def rank_at_floors(self, i: int, floor_u: Grade, floor_v: Grade) -> int:
        """Rank keyed directly by closure members (the floors of u and v)."""
        key = (i, floor_u, floor_v)
        got = self._ranks.get(key)
        if got is None:
            got = homology.rank_inclusion(
                self.complex_at(floor_u), self.complex_at(floor_v), i
            )
            with self._lock:
                got = self._ranks.setdefault(key, got)
        return got

    def summary(self) -> dict:
        return {
            "n": self.filtration.n,
            "simplexCount": len(self.filtration),
            "criticalCount": len(self.critical.cells),
            "cBarSize": len(self.cbar),
        }


def rank(
    filtration: Filtration, field: VectorField, i: int, u: Grade, v: Grade
) -> int:
    """One-shot rank query; build a RankEngine for repeated use."""
    return RankEngine(filtration, field).rank(i, u, v)
