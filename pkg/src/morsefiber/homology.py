"""Ground-truth homology over the two-element field.

Everything here is computed by exact elimination on bit-packed boundary
matrices: Betti numbers, ranks of inclusion-induced maps, and the
one-parameter persistence reduction used as the oracle for the fast
critical-value paths.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Sequence

from . import gf2
from .diagram import DiagramPoint, FiberDiagram
from .errors import FiltrationError
from .filtration import Filtration, Simplex, facets, is_face_closed, simplex_key
from .lines import Line, entrance_t


def _by_dim(complex_: Iterable[Simplex]) -> dict[int, list[Simplex]]:
    out: dict[int, list[Simplex]] = defaultdict(list)
    for s in complex_:
        out[len(s) - 1].append(tuple(s))
    for cells in out.values():
        cells.sort()
    return out


def _boundary_packed(cols_simplices: Sequence[Simplex], row_index: dict[Simplex, int]):
    """Columns of the boundary map, one per simplex, packed as bitsets."""
    columns = []
    for s in cols_simplices:
        if len(s) == 1:
            columns.append([])
        else:
            columns.append([row_index[f] for f in facets(s)])
    return gf2.pack_columns(columns, max(len(row_index), 1))


def betti(complex_: Iterable[Simplex], i: int) -> int:
    """dim ker of the i-th boundary map minus rank of the (i+1)-th."""
    cells = _by_dim(complex_)
    n_i = len(cells.get(i, []))
    if i < 0 or n_i == 0:
        return 0
    rows_i = {s: k for k, s in enumerate(cells.get(i - 1, []))}
    d_i = _boundary_packed(cells[i], rows_i)
    rank_d_i = gf2.rank(d_i, max(len(rows_i), 1))
    rows_i1 = {s: k for k, s in enumerate(cells[i])}
    d_i1 = _boundary_packed(cells.get(i + 1, []), rows_i1)
    rank_d_i1 = gf2.rank(d_i1, len(rows_i1))
    return n_i - rank_d_i - rank_d_i1


def betti_numbers(complex_: Iterable[Simplex]) -> list[int]:
    cells = _by_dim(complex_)
    top = max(cells, default=-1)
    return [betti(complex_, i) for i in range(top + 1)]


def rank_inclusion(
    k_sub: Iterable[Simplex], k_sup: Iterable[Simplex], i: int
) -> int:
    """Rank of H_i(K_sub) -> H_i(K_sup) induced by inclusion.

    Computed as rank([Z | B]) - rank(B) where Z is a cycle basis of the
    subcomplex and B the boundary columns of the supercomplex, both over
    the supercomplex's i-simplex coordinates.
    """
    sub = frozenset(tuple(s) for s in k_sub)
    sup = frozenset(tuple(s) for s in k_sup)
    if not sub <= sup:
        raise FiltrationError("first complex is not contained in the second")
    if not is_face_closed(sub) or not is_face_closed(sup):
        raise FiltrationError("inputs must be face-closed complexes")
    if i < 0:
        return 0
    sub_cells = _by_dim(sub)
    sup_cells = _by_dim(sup)
    sub_i = sub_cells.get(i, [])
    if not sub_i:
        return 0
    sup_i = sup_cells.get(i, [])
    sup_index = {s: k for k, s in enumerate(sup_i)}

    rows_sub = {s: k for k, s in enumerate(sub_cells.get(i - 1, []))}
    d_sub = _boundary_packed(sub_i, rows_sub)
    lows, combos = gf2.reduce_full(d_sub, max(len(rows_sub), 1))
    cycle_columns = []
    for j in range(len(sub_i)):
        if lows[j] == -1:
            chain = [sup_index[sub_i[k]] for k in gf2.bits_of(combos[j])]
            cycle_columns.append(chain)
    if not cycle_columns:
        return 0

    boundary_columns = []
    for s in sup_cells.get(i + 1, []):
        boundary_columns.append([sup_index[f] for f in facets(s)])

    n_rows = max(len(sup_i), 1)
    b_packed = gf2.pack_columns(boundary_columns, n_rows)
    zb_packed = gf2.pack_columns(cycle_columns + boundary_columns, n_rows)
    return gf2.rank(zb_packed, n_rows) - gf2.rank(b_packed, n_rows)


def line_persistence_reduction(
    filtration: Filtration, line: Line, degrees: Iterable[int]
) -> FiberDiagram:
    """Oracle diagram of the filtration restricted to a positive-slope line.

    Each simplex enters at the smallest t whose line point dominates its
    grade; simplices are ordered by (t, dimension, vertex list) and the
    boundary matrix is reduced column by column.  Zero-length pairs are
    dropped; unpaired cycle columns become essential points.
    """
    degrees = set(degrees)
    order = sorted(
        filtration.simplices,
        key=lambda s: (entrance_t(line, filtration.grade(s)),) + simplex_key(s),
    )
    index = {s: j for j, s in enumerate(order)}
    entry = [entrance_t(line, filtration.grade(s)) for s in order]
    columns = [[index[f] for f in facets(s)] for s in order]
    packed = gf2.pack_columns(columns, max(len(order), 1))
    lows = gf2.reduce_lows(packed, max(len(order), 1))

    counts: dict[tuple, int] = defaultdict(int)
    death_rows = set()
    for j, low in enumerate(lows):
        if low >= 0:
            death_rows.add(int(low))
            dim = len(order[int(low)]) - 1
            birth, death = entry[int(low)], entry[j]
            if dim in degrees and birth < death:
                counts[(dim, birth, death)] += 1
    for j, low in enumerate(lows):
        if low == -1 and j not in death_rows:
            dim = len(order[j]) - 1
            if dim in degrees:
                counts[(dim, entry[j], None)] += 1

    points = [
        DiagramPoint(
            dim=dim,
            birth_t=birth,
            death_t=death,
            birth_point=line.at(birth),
            death_point=None if death is None else line.at(death),
            multiplicity=mult,
        )
        for (dim, birth, death), mult in counts.items()
    ]
    return FiberDiagram.build(line, degrees, points)
