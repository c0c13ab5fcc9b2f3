"""Shared fixtures: desk-scale complexes and seeded random generators."""

from fractions import Fraction
from pathlib import Path

import pytest

import morsefiber as mf
from morsefiber.filtration import lub

DATA = Path(__file__).resolve().parent.parent / "data"


def g(*coords):
    return tuple(Fraction(c) for c in coords)


def ln(base, direction):
    return mf.Line(base=g(*base), direction=g(*direction))


# -- segment: two vertices joined by an edge ---------------------------------

SEGMENT_GRADES = {(0,): g(0, 0), (1,): g(1, 0), (0, 1): g(1, 1)}


@pytest.fixture
def segment():
    return mf.Filtration(2, SEGMENT_GRADES)


@pytest.fixture
def segment_engine(segment):
    return mf.RankEngine(segment)


# -- square with diagonal: a,b,c,d + edges + one filled triangle -------------

SQUARE_DIAG_CELLS = frozenset(
    {(0,), (1,), (2,), (3,), (0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (0, 2, 3)}
)
SQUARE_DIAG_PAIRS = (
    ((1,), (0, 1)),
    ((2,), (1, 2)),
    ((3,), (0, 3)),
    ((2, 3), (0, 2, 3)),
)


@pytest.fixture
def square_field():
    return mf.VectorField(SQUARE_DIAG_PAIRS)


@pytest.fixture
def square_at_origin():
    return mf.Filtration(2, {s: g(0, 0) for s in SQUARE_DIAG_CELLS})


@pytest.fixture
def staged_square():
    """Square-with-diagonal where the d corner enters later."""
    late = {(3,), (0, 3), (2, 3), (0, 2, 3)}
    return mf.Filtration(
        2, {s: (g(1, 1) if s in late else g(0, 0)) for s in SQUARE_DIAG_CELLS}
    )


# -- abstract grade sets from the desk figures --------------------------------

THREE_CORNERS = frozenset({g(3, 2), g(3, 5), g(6, 2)})

FOUR_CORNERS = frozenset({g(2, 3), g(2, 6), g(7, 3), g(7, 6)})


@pytest.fixture
def four_corner_set():
    return mf.lub_closure(FOUR_CORNERS)


@pytest.fixture
def corner_lines():
    return {
        "L": ln((0, 3), (7, 4)),
        "Lp": ln((0, 2), (1, 1)),
        "Lpp": ln((0, 6), (4, 1)),
    }


@pytest.fixture
def corners_filtration():
    """Four isolated vertices whose entrance grades are the four corners."""
    corners = sorted(FOUR_CORNERS)
    return mf.Filtration(2, {(k,): c for k, c in enumerate(corners)})


# -- random generators ---------------------------------------------------------

COORD_POOL = [Fraction(k, 2) for k in range(0, 7)]  # 0, 1/2, ..., 3
COARSE_POOL = [Fraction(k) for k in range(0, 4)]  # keeps 3-parameter closures small


def random_grade(rng, n, pool=None):
    if pool is None:
        pool = COORD_POOL if n <= 2 else COARSE_POOL
    return tuple(rng.choice(pool) for _ in range(n))


def random_filtration(rng, n, max_simplices=30):
    """Random face-closed complex with a monotone random grade function."""
    n_vertices = rng.randint(3, 6)
    cells = [tuple([v]) for v in range(n_vertices)]
    edges = []
    for a in range(n_vertices):
        for b in range(a + 1, n_vertices):
            if rng.random() < 0.55:
                edges.append((a, b))
    cells.extend(edges)
    edge_set = set(edges)
    triangles = []
    for a in range(n_vertices):
        for b in range(a + 1, n_vertices):
            for c in range(b + 1, n_vertices):
                if (
                    (a, b) in edge_set
                    and (a, c) in edge_set
                    and (b, c) in edge_set
                    and rng.random() < 0.5
                ):
                    triangles.append((a, b, c))
    cells.extend(triangles)
    tri_set = set(triangles)
    for a in range(n_vertices):
        for b in range(a + 1, n_vertices):
            for c in range(b + 1, n_vertices):
                for d in range(c + 1, n_vertices):
                    faces = [(a, b, c), (a, b, d), (a, c, d), (b, c, d)]
                    if all(f in tri_set for f in faces) and rng.random() < 0.4:
                        cells.append((a, b, c, d))
    # Trim from the top dimension down so face closure survives.
    while len(cells) > max_simplices:
        top = max(cells, key=len)
        if len(top) == 1:
            break
        cells.remove(top)

    grades = {}
    for s in sorted(cells, key=len):
        base = random_grade(rng, n)
        for f in (s[:i] + s[i + 1 :] for i in range(len(s)) if len(s) > 1):
            base = lub(base, grades[f])
        if len(s) > 1 and rng.random() < 0.6:
            base = lub(base, random_grade(rng, n))
        grades[s] = base
    return mf.Filtration(n, grades)


LINE_BASE_POOL = [Fraction(k, 2) for k in range(-3, 5)]
LINE_DIR_POOL = [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(1, 3)]


def random_line(rng, n):
    return mf.Line(
        base=tuple(rng.choice(LINE_BASE_POOL) for _ in range(n)),
        direction=tuple(rng.choice(LINE_DIR_POOL) for _ in range(n)),
    )


JITTER = [Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(2)]


def random_comparable_pair(rng, engine):
    """A pair u <= v sampled around the closed critical set."""
    closure = list(engine.cbar)

    def sample():
        if closure and rng.random() < 0.5:
            c = rng.choice(closure)
            return tuple(x + rng.choice(JITTER) for x in c)
        return random_grade(rng, engine.filtration.n)

    u = sample()
    v = lub(u, sample())
    return u, v


def perturbed_equivalent_line(rng, cbar, line):
    """An equivalent line near ``line``: small geometric nudges first,
    reparametrization of the same geometric line as a fallback."""
    n = len(line.base)
    for denom in (64, 512, 4096):
        for _ in range(12):
            base = tuple(
                b + Fraction(rng.randint(-1, 1), denom) for b in line.base
            )
            direction = tuple(
                m + Fraction(rng.randint(-1, 1), denom) for m in line.direction
            )
            if any(m <= 0 for m in direction):
                continue
            candidate = mf.Line(base=base, direction=direction)
            if candidate != line and mf.equivalent(cbar, line, candidate):
                return candidate
    shift = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    scale = Fraction(rng.randint(1, 5), rng.randint(1, 3))
    return mf.Line(
        base=tuple(b + m * shift for b, m in zip(line.base, line.direction)),
        direction=tuple(m * scale for m in line.direction),
    )
