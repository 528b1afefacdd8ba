import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from rangepair.geometry import ClosestPairAnswer, Point, Square, WeightedPoint, d_euclid_sq
from rangepair.min_weight import (
    BruteClosestPair,
    InternalInconsistencyError,
    build_doubled_set,
    build_rmw_from_cp,
    compute_delta_hat,
    min_distance_sq,
    normalize_weights,
    rcp_backend,
    rmw_from_cp_query,
)
from rangepair.oracle import brute_closest_pair_in_range, brute_min_weight_in_range
from support import general_position, point_sets, random_square, squares, with_weights


def wp(x, y, i, w):
    return WeightedPoint(Point(x, y, i), w)


def test_normalize_examples():
    assert normalize_weights([wp(0, 0, 0, 42)]).rank_weight == {0: Fraction(1, 2)}
    nw = normalize_weights([wp(0, 0, 0, 5.0), wp(1, 2, 1, 2.0), wp(2, 5, 2, 9.0)])
    assert [nw.rank_weight[i] for i in range(3)] == [Fraction(2, 6), Fraction(1, 6), Fraction(3, 6)]
    assert nw.original_weight == {0: 5.0, 1: 2.0, 2: 9.0}
    nw = normalize_weights([wp(0, 0, 0, 1), wp(1, 2, 1, 1)])
    assert [nw.rank_weight[i] for i in range(2)] == [Fraction(1, 4), Fraction(2, 4)]
    with pytest.raises(ValueError):
        normalize_weights([])


def test_delta_hat_examples():
    assert compute_delta_hat([Point(0, 0, 0), Point(3, 4, 1)]) == 5
    dh = compute_delta_hat([Point(0, 0, 0), Point(1, 1, 1)])
    assert 0 < dh and dh * dh <= 2 and 4 * dh * dh >= 2
    with pytest.raises(ValueError):
        compute_delta_hat([Point(0, 0, 0)])


def test_delta_hat_bounds_random():
    rng = random.Random(1)
    for _ in range(50):
        S = general_position(rng.randint(2, 60), 10**4, rng)
        D = min(d_euclid_sq(p, q) for p, q in combinations(S, 2))
        assert min_distance_sq(S) == D
        dh = compute_delta_hat(S)
        assert 0 < dh * dh <= D <= 4 * dh * dh


def test_delta_hat_on_rational_input():
    S = [Point(Fraction(1, 3), 0, 0), Point(Fraction(2, 3), Fraction(1, 7), 1)]
    D = d_euclid_sq(*S)
    dh = compute_delta_hat(S)
    assert dh * dh <= D <= 4 * dh * dh


def _unscaled(d, p):
    return Point(Fraction(p.x, d.scale), Fraction(p.y, d.scale), p.id)


def test_satellites_example():
    S = [wp(0, 0, 0, 9), wp(5, 7, 1, 1)]
    d = build_doubled_set(S, delta_hat=3)
    # (0, 0) has the larger weight: rank 2 of 2, normalized to 1/2
    assert _unscaled(d, d.plus[0]) == Point(Fraction(1, 2), 0, 2)
    assert _unscaled(d, d.minus[0]) == Point(Fraction(-1, 2), 0, 4)
    assert _unscaled(d, d.base[1]) == Point(5, 7, 1)
    assert len(d.all_points()) == 6
    assert [d.source(i) for i in range(6)] == [0, 1, 0, 1, 0, 1]


def test_doubled_set_rejects_bad_delta_hat():
    S = [wp(0, 0, 0, 1), wp(1, 1, 1, 2)]
    with pytest.raises(ValueError):
        build_doubled_set(S, delta_hat=2)
    with pytest.raises(ValueError):
        build_doubled_set(S, delta_hat=0)
    with pytest.raises(ValueError):
        build_doubled_set(S[:1])


def _satellite_distance_violations(d):
    """Count failures of the four satellite distance inequalities (scaled frame)."""
    dh = d.delta_hat * d.scale
    bad = 0
    sats = list(zip(d.plus, d.minus))
    for i, p in enumerate(d.base):
        for a in sats[i]:
            bad += not 9 * d_euclid_sq(p, a) < dh * dh
    for i, j in combinations(range(d.n), 2):
        p, q = d.base[i], d.base[j]
        bad += not d_euclid_sq(p, q) >= dh * dh
        for b in sats[j]:
            bad += not 9 * d_euclid_sq(p, b) > 4 * dh * dh
        for a in sats[i]:
            bad += not 9 * d_euclid_sq(q, a) > 4 * dh * dh
            for b in sats[j]:
                bad += not 9 * d_euclid_sq(a, b) > dh * dh
    return bad


def test_offsets_below_third_of_delta_hat():
    rng = random.Random(2)
    S = with_weights(general_position(40, 1000, rng), rng)
    d = build_doubled_set(S)
    dh = d.delta_hat * d.scale
    for p, a, b in zip(d.base, d.plus, d.minus):
        assert 0 < 3 * (a.x - p.x) < dh and 3 * (p.x - b.x) < dh
        assert a.y == b.y == p.y


@pytest.mark.parametrize("halve", [False, True])
def test_satellite_distance_inequalities(halve):
    rng = random.Random(3 + halve)
    for _ in range(10):
        S = with_weights(general_position(rng.randint(2, 50), 2000, rng), rng)
        dh = compute_delta_hat([w.point for w in S])
        d = build_doubled_set(S, dh / 2 if halve else dh)
        assert _satellite_distance_violations(d) == 0


@pytest.mark.parametrize("halve", [False, True])
def test_own_satellite_in_range_and_closest(halve):
    rng = random.Random(7 + halve)
    for _ in range(6):
        S = with_weights(general_position(rng.randint(2, 50), 500, rng), rng)
        dh = compute_delta_hat([w.point for w in S])
        d = build_doubled_set(S, dh / 2 if halve else dh)
        everything = d.all_points()
        checked = 0
        while checked < 50:
            R = random_square(500, rng)
            inside = [w for w in S if R.contains(w.point)]
            if len(inside) < 2:
                continue
            checked += 1
            F = d.to_frame(R)
            for i, w in enumerate(S):
                if R.contains(w.point):
                    assert F.contains(d.plus[i]) or F.contains(d.minus[i])
            cp = brute_closest_pair_in_range(everything, F)
            a, b = cp.pair
            assert d.is_base(a.id) != d.is_base(b.id) and d.source(a.id) == d.source(b.id)
            owner = S[d.source(a.id)]
            assert owner.weight == brute_min_weight_in_range(S, R).weight


def test_single_point_uses_membership_only():
    idx = build_rmw_from_cp([wp(3, 3, 0, 8)])
    assert idx.cp_index is None
    assert rmw_from_cp_query(idx, Square(0, 0, 5, 5)).weight == 8
    assert rmw_from_cp_query(idx, Square(4, 4, 5, 5)) is None


def test_empty_and_singleton_ranges():
    S = [wp(0, 0, 0, 4), wp(10, 3, 1, 1), wp(4, 9, 2, 2)]
    idx = build_rmw_from_cp(S)
    assert rmw_from_cp_query(idx, Square(20, 20, 21, 21)) is None
    assert rmw_from_cp_query(idx, Square(3, 8, 5, 10)).weight == 2
    assert rmw_from_cp_query(idx, Square(-1, -1, 11, 11)).weight == 1
    assert len(idx.doubled.all_points()) == 9


@pytest.mark.parametrize("backend", [BruteClosestPair, rcp_backend], ids=["brute", "rcp"])
def test_matches_oracle(backend):
    rng = random.Random(11)
    for _ in range(4):
        S = with_weights(general_position(rng.randint(1, 100), 5000, rng), rng, spread=20)
        idx = build_rmw_from_cp(S, backend)
        for _ in range(150):
            R = random_square(5000, rng)
            got, want = rmw_from_cp_query(idx, R), brute_min_weight_in_range(S, R)
            assert (got is None) == (want is None)
            if got is not None:
                assert got.weight == want.weight


class _WrongPair:
    def __init__(self, points):
        self.points = list(points)

    def query(self, R):
        a, b = self.points[0], self.points[1]
        return ClosestPairAnswer(d_euclid_sq(a, b), (a, b))


def test_inconsistent_backend_is_reported():
    S = [wp(0, 0, 0, 1), wp(1, 2, 1, 2), wp(5, 3, 2, 3)]
    idx = build_rmw_from_cp(S, _WrongPair)
    with pytest.raises(InternalInconsistencyError):
        rmw_from_cp_query(idx, Square(-1, -1, 9, 9))


@settings(max_examples=40, deadline=None)
@given(point_sets(max_n=25, min_n=1, coord_range=150),
       st.lists(st.integers(-3, 3), min_size=25, max_size=25),
       st.lists(squares(150), max_size=20))
def test_property_min_weight(S, ws, Rs):
    V = [WeightedPoint(p, w) for p, w in zip(S, ws)]
    idx = build_rmw_from_cp(V)
    for R in Rs:
        got, want = rmw_from_cp_query(idx, R), brute_min_weight_in_range(V, R)
        assert (got and got.weight) == (want and want.weight)
        assert (got is None) == (want is None)
