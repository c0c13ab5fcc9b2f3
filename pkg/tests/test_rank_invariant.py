import random
from fractions import Fraction

import pytest

import morsefiber as mf
from morsefiber.errors import (
    ClosureCapError,
    EmptyCriticalSetError,
    GradeDimensionError,
)
from morsefiber.rank_invariant import lub_closure

from .conftest import (
    THREE_CORNERS,
    g,
    random_comparable_pair,
    random_filtration,
)


def test_critical_values_all_cells_critical(segment):
    values = mf.critical_values(segment, mf.VectorField([]))
    assert values == {g(0, 0), g(1, 0), g(1, 1)}


def test_critical_values_deduplicated():
    f = mf.Filtration(2, {(0,): g(1, 1), (1,): g(1, 1)})
    values = mf.critical_values(f, mf.VectorField([]))
    assert values == {g(1, 1)}


def test_critical_values_three_corner_fixture():
    corners = sorted(THREE_CORNERS)
    f = mf.Filtration(2, {(k,): c for k, c in enumerate(corners)})
    assert mf.critical_values(f, mf.VectorField([])) == THREE_CORNERS


def test_closure_of_three_corners_adds_one():
    closed = lub_closure(THREE_CORNERS)
    assert set(closed) == THREE_CORNERS | {g(6, 5)}
    assert closed.base == THREE_CORNERS


def test_closure_of_chain_unchanged():
    closed = lub_closure({g(0, 0), g(1, 1)})
    assert set(closed) == {g(0, 0), g(1, 1)}


def test_closure_of_antichain():
    closed = lub_closure({g(0, 2), g(1, 1), g(2, 0)})
    assert set(closed) == {
        g(0, 2), g(1, 1), g(2, 0), g(1, 2), g(2, 1), g(2, 2),
    }


def test_closure_rejects_empty():
    with pytest.raises(EmptyCriticalSetError):
        lub_closure(frozenset())


def test_closure_cap():
    grades = {g(i, -i) for i in range(12)}
    with pytest.raises(ClosureCapError):
        lub_closure(grades, cap=20)


def test_closure_cap_env_override(monkeypatch):
    grades = {g(i, -i) for i in range(12)}
    monkeypatch.setenv("MF_CBAR_CAP", "20")
    with pytest.raises(ClosureCapError):
        lub_closure(grades)
    monkeypatch.setenv("MF_CBAR_CAP", "100000")
    assert len(lub_closure(grades)) >= 12


def test_closure_is_lub_closed_on_random_sets():
    rng = random.Random(47)
    for _ in range(20):
        grades = {g(rng.randint(0, 4), rng.randint(0, 4)) for _ in range(rng.randint(1, 6))}
        closed = set(lub_closure(grades))
        for a in closed:
            for b in closed:
                assert mf.lub(a, b) in closed


def test_floor_examples():
    closed = lub_closure(THREE_CORNERS)
    assert closed.floor(g(4, 6)) == g(3, 5)
    assert closed.floor(g(6, 5)) == g(6, 5)
    assert closed.floor(g(-1, -1)) is None
    with pytest.raises(GradeDimensionError):
        closed.floor(g(1,))


def test_floor_idempotent():
    rng = random.Random(53)
    closed = lub_closure(THREE_CORNERS)
    for _ in range(100):
        u = g(rng.randint(0, 8), rng.randint(0, 8))
        fl = closed.floor(u)
        if fl is not None:
            assert closed.floor(fl) == fl


def test_rank_examples(segment_engine):
    assert segment_engine.rank(0, (Fraction(1, 2), Fraction(1, 2)), g(2, 2)) == 1
    # equal grades inside the closed set: rank is the betti number there
    assert segment_engine.rank(0, g(1, 0), g(1, 0)) == 2
    assert segment_engine.rank(0, g(-1, -1), g(5, 5)) == 0
    with pytest.raises(GradeDimensionError):
        segment_engine.rank(0, g(1, 1), g(0, 0))


def test_rank_one_shot_matches_engine(segment, segment_engine):
    value = mf.rank(segment, segment_engine.field, 0, g(1, 0), g(1, 1))
    assert value == segment_engine.rank(0, g(1, 0), g(1, 1))


def test_rank_matches_oracle_on_random_instances():
    rng = random.Random(59)
    for _ in range(15):
        f = random_filtration(rng, rng.choice([2, 3]), max_simplices=25)
        engine = mf.RankEngine(f)
        for _ in range(30):
            u, v = random_comparable_pair(rng, engine)
            for i in (0, 1, 2):
                direct = mf.rank_inclusion(f.sublevel(u), f.sublevel(v), i)
                assert engine.rank(i, u, v) == direct


def test_rank_non_increasing_in_upper_grade():
    rng = random.Random(61)
    for _ in range(10):
        f = random_filtration(rng, 2, max_simplices=25)
        engine = mf.RankEngine(f)
        u, v = random_comparable_pair(rng, engine)
        chain = [v]
        for _ in range(3):
            chain.append(mf.lub(chain[-1], random_comparable_pair(rng, engine)[1]))
        for i in (0, 1):
            ranks = [engine.rank(i, u, w) for w in chain]
            assert all(a >= b for a, b in zip(ranks, ranks[1:]))


def test_memoized_and_fresh_paths_agree():
    rng = random.Random(67)
    f = random_filtration(rng, 2, max_simplices=25)
    warm = mf.RankEngine(f)
    queries = [random_comparable_pair(rng, warm) for _ in range(25)]
    warm_values = [warm.rank(1, u, v) for u, v in queries]
    warm_again = [warm.rank(1, u, v) for u, v in queries]
    cold_values = [mf.RankEngine(f).rank(1, u, v) for u, v in queries]
    assert warm_values == warm_again == cold_values


def test_engine_rejects_invalid_field(segment):
    with pytest.raises(mf.errors.VectorFieldError):
        mf.RankEngine(segment, mf.VectorField([((1,), (0, 1))]))


def test_engine_summary(segment_engine):
    assert segment_engine.summary() == {
        "n": 2,
        "simplexCount": 3,
        "criticalCount": 3,
        "cBarSize": 3,
    }
