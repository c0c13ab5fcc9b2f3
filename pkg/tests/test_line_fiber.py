import random
from fractions import Fraction

import pytest

import morsefiber as mf
from morsefiber.errors import LineEquivalenceError, MorsefiberError, NonPositiveSlopeError
from morsefiber.lines import cone_faces_intersect, parse_line_literal

from .conftest import (
    FOUR_CORNERS,
    g,
    ln,
    perturbed_equivalent_line,
    random_filtration,
    random_grade,
    random_line,
)


def test_line_requires_positive_direction():
    with pytest.raises(NonPositiveSlopeError):
        ln((0, 0), (1, 0))
    with pytest.raises(NonPositiveSlopeError):
        ln((0, 0), (-1, 1))


def test_line_literal_roundtrip():
    line = parse_line_literal("base=1/2,-3 dir=2,1/3")
    assert line.base == (Fraction(1, 2), Fraction(-3))
    assert line.direction == (Fraction(2), Fraction(1, 3))
    assert parse_line_literal(line.literal()) == line
    with pytest.raises(ValueError):
        parse_line_literal("base=1,2")
    with pytest.raises(ValueError):
        parse_line_literal("base=0.5,1 dir=1,1")


def test_push_examples(four_corner_set, corner_lines):
    result = mf.push(corner_lines["L"], g(7, 2))
    assert result.point == g(7, 7)
    assert result.t == 1
    assert result.face == {0}

    on_line = corner_lines["L"].at(Fraction(1, 2))
    self_push = mf.push(corner_lines["L"], on_line)
    assert self_push.point == on_line
    assert self_push.face == {0, 1}

    seg_line = ln((1, 0), (1, 1))
    result = mf.push(seg_line, g(1, 1))
    assert result.point == g(2, 1)
    assert result.t == 1
    assert result.face == {1}


def test_push_laws_random():
    rng = random.Random(71)
    for _ in range(300):
        n = rng.choice([2, 3])
        line = random_line(rng, n)
        u = random_grade(rng, n)
        v = mf.lub(u, random_grade(rng, n))
        pu, pv = mf.push(line, u), mf.push(line, v)
        # the push dominates, with equality exactly on line points
        assert mf.leq(u, pu.point)
        ratios = {(ui - bi) / mi for ui, bi, mi in zip(u, line.base, line.direction)}
        assert (pu.point == u) == (len(ratios) == 1)
        # idempotence on line points
        again = mf.push(line, pu.point)
        assert again.point == pu.point and again.t == pu.t
        # monotone
        assert mf.leq(pu.point, pv.point)
        # minimality: any strictly earlier line point fails to dominate
        for back in (Fraction(1, 3), Fraction(2)):
            assert not mf.leq(u, line.at(pu.t - back))
        # face-overlap law for comparable pairs
        same_push = pu.point == pv.point
        assert same_push == cone_faces_intersect(u, pu.face, v, pv.face)


def test_push_ceiling_matches_figure(four_corner_set, corner_lines):
    assert mf.push_ceiling(four_corner_set, corner_lines["L"], g(7, 3)) == g(7, 6)


def test_push_ceiling_of_maximal_value(four_corner_set, corner_lines):
    assert mf.push_ceiling(four_corner_set, corner_lines["L"], g(7, 6)) == g(7, 6)


def test_push_ceiling_requires_closure_member(four_corner_set, corner_lines):
    with pytest.raises(MorsefiberError):
        mf.push_ceiling(four_corner_set, corner_lines["L"], g(7, 2))


def test_push_ceiling_equals_floor_of_push():
    rng = random.Random(73)
    for _ in range(40):
        grades = {
            g(rng.randint(0, 4), rng.randint(0, 4)) for _ in range(rng.randint(1, 6))
        }
        closed = mf.lub_closure(grades)
        line = random_line(rng, 2)
        for u in closed:
            expected = closed.floor(mf.push(line, u).point)
            assert mf.push_ceiling(closed, line, u) == expected


def test_floor_fixed_under_push_ceiling_for_line_points():
    rng = random.Random(79)
    for _ in range(40):
        grades = {
            g(rng.randint(0, 4), rng.randint(0, 4)) for _ in range(rng.randint(1, 6))
        }
        closed = mf.lub_closure(grades)
        line = random_line(rng, 2)
        t = Fraction(rng.randint(-2, 12), rng.randint(1, 3))
        floor = closed.floor(line.at(t))
        if floor is not None:
            assert mf.push_ceiling(closed, line, floor) == floor


def test_signature_of_corner_set(four_corner_set, corner_lines):
    sig = mf.signature(four_corner_set, corner_lines["L"])
    assert sig.faces == {
        g(2, 3): {0},
        g(2, 6): {1},
        g(7, 3): {0},
        g(7, 6): {0},
    }
    assert sig == mf.signature(four_corner_set, corner_lines["Lp"])
    sig_pp = mf.signature(four_corner_set, corner_lines["Lpp"])
    assert sig_pp.faces[g(2, 6)] == {0}
    assert sig != sig_pp


def test_equivalence_examples(four_corner_set, corner_lines):
    assert mf.equivalent(four_corner_set, corner_lines["L"], corner_lines["Lp"])
    assert not mf.equivalent(four_corner_set, corner_lines["L"], corner_lines["Lpp"])
    assert mf.equivalent(four_corner_set, corner_lines["L"], corner_lines["L"])


def test_class_id_is_stable(four_corner_set, corner_lines):
    a = mf.signature(four_corner_set, corner_lines["L"]).class_id()
    b = mf.signature(four_corner_set, corner_lines["Lp"]).class_id()
    c = mf.signature(four_corner_set, corner_lines["Lpp"]).class_id()
    assert a == b != c
    assert len(a) == 16 and int(a, 16) >= 0


def test_pushed_criticals_segment(segment_engine):
    stops = mf.pushed_criticals(segment_engine.cbar, ln((1, 0), (1, 1)))
    assert [(s.t, s.point) for s in stops] == [
        (Fraction(0), g(1, 0)),
        (Fraction(1), g(2, 1)),
    ]
    assert stops[0].floor == g(1, 0)
    assert stops[1].floor == g(1, 1)


def test_pushed_criticals_single_point():
    closed = mf.lub_closure({g(1, 1)})
    stops = mf.pushed_criticals(closed, ln((0, 0), (1, 1)))
    assert len(stops) == 1


def test_pushed_criticals_strictly_increasing(four_corner_set):
    rng = random.Random(83)
    for _ in range(25):
        line = random_line(rng, 2)
        stops = mf.pushed_criticals(four_corner_set, line)
        for a, b in zip(stops, stops[1:]):
            assert a.t < b.t
            assert mf.strictly_less(a.point, b.point)


def test_fiber_diagram_segment(segment_engine):
    d = mf.fiber_diagram(segment_engine, ln((1, 0), (1, 1)), [0])
    assert d.multiset() == (
        (0, Fraction(0), Fraction(1), 1),
        (0, Fraction(0), None, 1),
    )
    finite = [p for p in d.points if p.death_t is not None][0]
    assert finite.birth_point == g(1, 0)
    assert finite.death_point == g(2, 1)


def test_fiber_diagram_single_grade_square(square_at_origin):
    engine = mf.RankEngine(square_at_origin)
    d = mf.fiber_diagram(engine, ln((-2, -2), (1, 1)), [0, 1, 2])
    assert d.multiset() == ((0, Fraction(2), None, 1), (1, Fraction(2), None, 1))


def test_no_births_before_first_stop():
    rng = random.Random(89)
    for _ in range(20):
        f = random_filtration(rng, 2, max_simplices=25)
        engine = mf.RankEngine(f)
        line = random_line(rng, 2)
        stops = mf.pushed_criticals(engine.cbar, line)
        d = mf.fiber_diagram(engine, line, [0, 1])
        for p in d.points:
            assert p.birth_t >= stops[0].t


def test_fiber_matches_oracle_quick():
    rng = random.Random(97)
    for _ in range(15):
        f = random_filtration(rng, rng.choice([2, 3]), max_simplices=25)
        engine = mf.RankEngine(f)
        line = random_line(rng, f.n)
        fast = mf.fiber_diagram(engine, line, [0, 1, 2])
        oracle = mf.line_persistence_reduction(f, line, [0, 1, 2])
        assert fast.multiset() == oracle.multiset()


def test_transfer_segment_example(segment_engine):
    src = ln((1, 0), (1, 1))
    dst = ln((1, 0), (2, 1))
    diagram = mf.fiber_diagram(segment_engine, src, [0])
    moved = mf.transfer(segment_engine.cbar, diagram, dst)
    assert moved.multiset() == (
        (0, Fraction(0), Fraction(1), 1),
        (0, Fraction(0), None, 1),
    )
    finite = [p for p in moved.points if p.death_t is not None][0]
    assert finite.death_point == g(3, 1)
    assert moved == mf.fiber_diagram(segment_engine, dst, [0])


def test_transfer_identity(segment_engine):
    line = ln((1, 0), (1, 1))
    diagram = mf.fiber_diagram(segment_engine, line, [0])
    assert mf.transfer(segment_engine.cbar, diagram, line) == diagram


def test_transfer_rejects_inequivalent(four_corner_set, corner_lines, corners_filtration):
    engine = mf.RankEngine(corners_filtration)
    diagram = mf.fiber_diagram(engine, corner_lines["L"], [0])
    with pytest.raises(LineEquivalenceError):
        mf.transfer(engine.cbar, diagram, corner_lines["Lpp"])


def test_transfer_equals_direct_on_random_equivalent_pairs():
    rng = random.Random(101)
    done = 0
    while done < 12:
        f = random_filtration(rng, 2, max_simplices=25)
        engine = mf.RankEngine(f)
        src = random_line(rng, 2)
        dst = perturbed_equivalent_line(rng, engine.cbar, src)
        assert mf.equivalent(engine.cbar, src, dst)
        moved = mf.transfer(engine.cbar, mf.fiber_diagram(engine, src, [0, 1]), dst)
        assert moved.multiset() == mf.fiber_diagram(engine, dst, [0, 1]).multiset()
        done += 1


def test_rank_matches_bars_alive_on_interval():
    # the diagram fully encodes the rank along the line: rank between the
    # points at s <= t equals the bars born by s and still alive past t
    rng = random.Random(109)
    for _ in range(12):
        f = random_filtration(rng, 2, max_simplices=25)
        engine = mf.RankEngine(f)
        line = random_line(rng, 2)
        diagram = mf.fiber_diagram(engine, line, [0, 1, 2])
        for _ in range(8):
            s = Fraction(rng.randint(-2, 10), rng.randint(1, 3))
            t = s + Fraction(rng.randint(0, 6), rng.randint(1, 3))
            for i in (0, 1, 2):
                alive = sum(
                    p.multiplicity
                    for p in diagram.points
                    if p.dim == i
                    and p.birth_t <= s
                    and (p.death_t is None or p.death_t > t)
                )
                assert alive == engine.rank(i, line.at(s), line.at(t))
                assert alive == mf.rank_inclusion(
                    f.sublevel(line.at(s)), f.sublevel(line.at(t)), i
                )


def test_corners_filtration_closure_matches_figure(corners_filtration):
    engine = mf.RankEngine(corners_filtration)
    assert set(engine.cbar) == FOUR_CORNERS
    assert engine.cbar.base == FOUR_CORNERS
