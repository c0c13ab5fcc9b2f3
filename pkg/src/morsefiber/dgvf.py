"""Discrete gradient vector fields: validation, greedy construction,
critical cells, and filtration-compatible collapses.

A vector field is a facet/cofacet matching.  It is gradient when no
nontrivial closed V-path exists, and consistent with a filtration when
every matched pair enters together (equal grades, since filtrations here
are one-critical).
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from .errors import CollapseStuckError, FiltrationError, OcfParseError, VectorFieldError
from .filtration import Filtration, Grade, Simplex, facets, normalize_simplex, simplex_key


class VectorField:
    """An ordered set of (facet, cofacet) pairs; immutable."""

    __slots__ = ("pairs", "_lower_of", "_upper_of")

    def __init__(self, pairs: Iterable[tuple[Simplex, Simplex]]):
        normalized = []
        for sigma, tau in pairs:
            normalized.append((tuple(sigma), tuple(tau)))
        normalized.sort(key=lambda p: simplex_key(p[0]))
        self.pairs = tuple(normalized)
        self._lower_of = {tau: sigma for sigma, tau in self.pairs}
        self._upper_of = {sigma: tau for sigma, tau in self.pairs}

    def __len__(self):
        return len(self.pairs)

    def __eq__(self, other):
        return isinstance(other, VectorField) and set(self.pairs) == set(other.pairs)

    def __hash__(self):
        return hash(frozenset(self.pairs))

    def paired_cells(self) -> frozenset[Simplex]:
        return frozenset(self._lower_of) | frozenset(self._upper_of)

    def upper_of(self, sigma: Simplex) -> Simplex | None:
        return self._upper_of.get(tuple(sigma))

    def to_dgvf(self) -> str:
        lines = []
        for sigma, tau in self.pairs:
            left = " ".join(str(v) for v in sigma)
            right = " ".join(str(v) for v in tau)
            lines.append(f"{left} ; {right}")
        return "\n".join(lines) + ("\n" if lines else "")


def parse_dgvf(text: str) -> VectorField:
    """Parse the ``.dgvf`` format: one ``v0 ... vk ; w0 ... wm`` pair per line."""
    pairs = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ";" not in line:
            raise OcfParseError(line_no, "expected 'v0 ... vk ; w0 ... wm'")
        left, right = line.split(";", 1)
        try:
            sigma = normalize_simplex(int(tok) for tok in left.split())
            tau = normalize_simplex(int(tok) for tok in right.split())
        except (ValueError, FiltrationError) as exc:
            raise OcfParseError(line_no, str(exc))
        pairs.append((sigma, tau))
    return VectorField(pairs)


@dataclass(frozen=True)
class CriticalSet:
    cells: frozenset[Simplex]
    by_dim: dict[int, tuple[Simplex, ...]]

    def count(self, dim: int) -> int:
        return len(self.by_dim.get(dim, ()))


def check_matching(complex_: Iterable[Simplex], field: VectorField) -> list[str]:
    """Every violation of the matching rules; empty list means valid."""
    present = frozenset(tuple(s) for s in complex_)
    violations = []
    seen: dict[Simplex, int] = defaultdict(int)
    for sigma, tau in field.pairs:
        if sigma not in present or tau not in present:
            missing = sigma if sigma not in present else tau
            raise VectorFieldError(f"pair references unknown simplex {missing}")
        if len(tau) != len(sigma) + 1 or not set(sigma) <= set(tau):
            violations.append(f"{sigma} is not a facet of {tau}")
        seen[sigma] += 1
        seen[tau] += 1
    for cell, uses in sorted(seen.items(), key=simplex_key):
        if uses > 1:
            violations.append(f"{cell} appears in {uses} pairs")
    return violations


def check_acyclic(complex_: Iterable[Simplex], field: VectorField) -> bool:
    """True iff the V-path digraph of every dimension is acyclic."""
    arcs: dict[Simplex, list[Simplex]] = defaultdict(list)
    for sigma, tau in field.pairs:
        for nxt in facets(tau):
            if nxt != sigma:
                arcs[sigma].append(nxt)
    # Iterative three-color DFS per weakly-used node.
    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[Simplex, int] = defaultdict(int)
    for start in arcs:
        if color[start] != WHITE:
            continue
        stack = [(start, iter(arcs.get(start, ())))]
        color[start] = GRAY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == GRAY:
                    return False
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    stack.append((nxt, iter(arcs.get(nxt, ()))))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
    return True


def check_consistent(filtration: Filtration, field: VectorField) -> bool:
    """True iff every pair enters the filtration together.

    For one-critical filtrations the sublevel biconditional reduces to
    grade equality of the two cells.
    """
    for sigma, tau in field.pairs:
        if filtration.grade(sigma) != filtration.grade(tau):
            return False
    return True


def critical_cells(complex_: Iterable[Simplex], field: VectorField) -> CriticalSet:
    present = frozenset(tuple(s) for s in complex_)
    paired = field.paired_cells()
    if not paired <= present:
        raise VectorFieldError("field pairs cells outside the complex")
    cells = present - paired
    by_dim: dict[int, list[Simplex]] = defaultdict(list)
    for s in cells:
        by_dim[len(s) - 1].append(s)
    return CriticalSet(
        cells=frozenset(cells),
        by_dim={d: tuple(sorted(v)) for d, v in by_dim.items()},
    )


def build_consistent_dgvf(filtration: Filtration) -> VectorField:
    """Greedy consistent gradient field.

    Simplices are grouped by equal grade; inside a group we repeatedly
    pair a cell with its unique not-yet-processed facet, and when no such
    cell exists the minimal remaining cell is left unpaired.  Pairs never
    cross groups, so consistency is automatic, and the removal order
    certifies acyclicity.  The critical set is not guaranteed minimal.
    """
    groups: dict[Grade, list[Simplex]] = defaultdict(list)
    for s in filtration.simplices:
        groups[filtration.grade(s)].append(s)

    pairs: list[tuple[Simplex, Simplex]] = []
    for grade in sorted(groups):
        member = set(groups[grade])
        remaining = set(member)
        in_group_facets = {
            s: [f for f in facets(s) if f in member] for s in member
        }
        cofacets: dict[Simplex, list[Simplex]] = defaultdict(list)
        for s, fs in in_group_facets.items():
            for f in fs:
                cofacets[f].append(s)
        count = {s: len(fs) for s, fs in in_group_facets.items()}

        heap = [simplex_key(s) + (s,) for s in member if count[s] == 1]
        heapq.heapify(heap)

        def on_removed(cell):
            for up in cofacets.get(cell, ()):
                if up in remaining:
                    count[up] -= 1
                    if count[up] == 1:
                        heapq.heappush(heap, simplex_key(up) + (up,))

        while remaining:
            tau = None
            while heap:
                candidate = heapq.heappop(heap)[-1]
                if candidate in remaining and count[candidate] == 1:
                    tau = candidate
                    break
            if tau is None:
                critical = min(remaining, key=simplex_key)
                remaining.discard(critical)
                on_removed(critical)
                continue
            sigma = next(f for f in in_group_facets[tau] if f in remaining)
            pairs.append((sigma, tau))
            remaining.discard(sigma)
            remaining.discard(tau)
            on_removed(sigma)
            on_removed(tau)
    return VectorField(pairs)


def collapse_toward(
    filtration: Filtration,
    field: VectorField,
    u: Grade,
    target: Grade,
    on_collapse=None,
) -> frozenset[Simplex]:
    """Collapse the sublevel complex at ``u`` down to the one at ``target``.

    Repeatedly removes a matched pair whose lower cell is a free facet in
    the current complex, both cells lying outside the target sublevel.
    ``on_collapse(sigma, tau, current)`` is invoked after each removal.
    Raises :class:`CollapseStuckError` when no free pair exists before the
    target is reached, which signals that the field is not consistent or
    not gradient.
    """
    current = set(filtration.sublevel(u))
    target_set = filtration.sublevel(target)
    if not target_set <= current:
        raise FiltrationError("target sublevel is not contained in the start sublevel")

    while current != target_set:
        found = None
        for sigma, tau in field.pairs:
            if (
                sigma in current
                and tau in current
                and sigma not in target_set
                and tau not in target_set
            ):
                cofacet_count = sum(
                    1 for cell in current if len(cell) == len(sigma) + 1 and set(sigma) <= set(cell)
                )
                if cofacet_count == 1:
                    found = (sigma, tau)
                    break
        if found is None:
            raise CollapseStuckError(
                "no free matched pair available; field is not consistent or not gradient"
            )
        current.discard(found[0])
        current.discard(found[1])
        if on_collapse is not None:
            on_collapse(found[0], found[1], frozenset(current))
    return frozenset(current)
