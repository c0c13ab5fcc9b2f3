import random
from fractions import Fraction

import pytest

import morsefiber as mf
from morsefiber.errors import FiltrationError, NonPositiveSlopeError
from morsefiber.filtration import facets

from .conftest import SQUARE_DIAG_CELLS, g, ln, random_filtration, random_line


def test_betti_square_with_diagonal():
    assert mf.betti(SQUARE_DIAG_CELLS, 0) == 1
    assert mf.betti(SQUARE_DIAG_CELLS, 1) == 1
    assert mf.betti(SQUARE_DIAG_CELLS, 2) == 0


def test_betti_two_isolated_vertices(segment):
    assert mf.betti(segment.sublevel(g(1, 0)), 0) == 2


def test_betti_empty_complex():
    assert mf.betti(frozenset(), 0) == 0
    assert mf.betti_numbers(frozenset()) == []


def test_boundary_of_boundary_vanishes():
    rng = random.Random(37)
    for _ in range(15):
        f = random_filtration(rng, 2, max_simplices=35)
        for s in f.simplices:
            if len(s) < 3:
                continue
            count = {}
            for face in facets(s):
                for sub in facets(face):
                    count[sub] = count.get(sub, 0) + 1
            assert all(c % 2 == 0 for c in count.values())


def test_rank_inclusion_merging_components(segment):
    assert mf.rank_inclusion(segment.sublevel(g(1, 0)), segment.sublevel(g(1, 1)), 0) == 1


def test_rank_inclusion_identity_is_betti():
    assert mf.rank_inclusion(SQUARE_DIAG_CELLS, SQUARE_DIAG_CELLS, 1) == 1
    assert mf.rank_inclusion(SQUARE_DIAG_CELLS, SQUARE_DIAG_CELLS, 0) == 1


def test_rank_inclusion_empty_sub(segment):
    assert mf.rank_inclusion(frozenset(), segment.sublevel(g(2, 2)), 0) == 0


def test_rank_inclusion_requires_subcomplex(segment):
    with pytest.raises(FiltrationError):
        mf.rank_inclusion(segment.sublevel(g(2, 2)), segment.sublevel(g(1, 0)), 0)


def test_rank_inclusion_bounded_by_betti():
    rng = random.Random(41)
    for _ in range(20):
        f = random_filtration(rng, 2, max_simplices=30)
        u = g(rng.randint(0, 2), rng.randint(0, 2))
        v = mf.lub(u, g(rng.randint(0, 3), rng.randint(0, 3)))
        sub, sup = f.sublevel(u), f.sublevel(v)
        for i in range(3):
            r = mf.rank_inclusion(sub, sup, i)
            assert r <= min(mf.betti(sub, i), mf.betti(sup, i))


def test_line_reduction_segment(segment):
    d = mf.line_persistence_reduction(segment, ln((1, 0), (1, 1)), [0])
    assert d.multiset() == (
        (0, Fraction(0), Fraction(1), 1),
        (0, Fraction(0), None, 1),
    )


def test_line_reduction_single_vertex():
    f = mf.Filtration(2, {(0,): g(1, 2)})
    d = mf.line_persistence_reduction(f, ln((0, 0), (1, 1)), [0])
    assert d.multiset() == ((0, Fraction(2), None, 1),)


def test_line_reduction_single_grade_square(square_at_origin):
    d = mf.line_persistence_reduction(square_at_origin, ln((-1, -1), (1, 1)), [0, 1, 2])
    assert d.multiset() == (
        (0, Fraction(1), None, 1),
        (1, Fraction(1), None, 1),
    )


def test_line_reduction_rejects_flat_direction(segment):
    with pytest.raises(NonPositiveSlopeError):
        mf.line_persistence_reduction(segment, ln((0, 0), (1, 0)), [0])


def test_diagram_counts_match_betti_at_samples():
    rng = random.Random(43)
    for _ in range(15):
        f = random_filtration(rng, 2, max_simplices=25)
        line = random_line(rng, 2)
        diagram = mf.line_persistence_reduction(f, line, [0, 1, 2])
        for t in (Fraction(-1), Fraction(1, 2), Fraction(2), Fraction(5)):
            complex_at = f.sublevel(line.at(t))
            for i in (0, 1, 2):
                alive = sum(
                    p.multiplicity
                    for p in diagram.points
                    if p.dim == i
                    and p.birth_t <= t
                    and (p.death_t is None or p.death_t > t)
                )
                assert alive == mf.betti(complex_at, i)
