import random

import pytest
from hypothesis import given, settings, strategies as st

from rangepair.geometry import GeneralPositionError, Point, d1, in_ne
from rangepair.oracle import brute_closest_c
from rangepair.staircase import (
    INF,
    build_staircase_index,
    closest_c_query,
    count_edges,
    locate_nec,
)
from support import general_position, point_sets, probes, random_probe


def ids(points):
    return [p.id for p in points]


def test_empty_set_is_one_plane_cell():
    idx = build_staircase_index([], 1)
    assert len(idx.cells) == 1
    cell = idx.cells[0]
    assert cell.z == (INF, INF)
    assert idx.edge_count() == 4
    assert closest_c_query(idx, Point(3, -7)) == []


def test_single_point_two_cells_both_store_it():
    S = [Point(0, 0, 0)]
    idx = build_staircase_index(S, 1)
    assert len(idx.cells) == 2
    by_z = {cell.z: cell for cell in idx.cells}
    assert set(by_z) == {(0, 0), (INF, INF)}
    assert ids(idx.answer_points(by_z[(0, 0)])) == [0]
    # z = (inf, inf) has nothing to its north-east
    assert ids(idx.answer_points(by_z[(INF, INF)])) == []
    assert ids(closest_c_query(idx, Point(-1, -1))) == [0]


def test_seven_points_c2_bounds_and_answers():
    rng = random.Random(7)
    S = general_position(7, 40, rng)
    idx = build_staircase_index(S, 2)
    assert len(idx.cells) <= 22
    for cell in idx.cells:
        zx, zy = cell.z
        if zx == INF or zy == INF:
            continue
        assert ids(idx.answer_points(cell)) == ids(brute_closest_c(S, Point(zx, zy), 2))


def test_query_outside_everything():
    S = general_position(30, 100, random.Random(1))
    idx = build_staircase_index(S, 3)
    assert closest_c_query(idx, Point(500, 500)) == []


def test_locate_interior_and_top_right_vertex():
    S = general_position(25, 100, random.Random(3))
    idx = build_staircase_index(S, 2)
    for cell in idx.cells:
        zx, zy = cell.z
        if zx == INF or zy == INF:
            continue
        assert locate_nec(idx, Point(zx, zy)) is cell
        mx, my = max(cell.corners, key=lambda m: (m[0], m[1]))
        if mx[0] != -INF and my[0] != -INF:
            # midpoint between the last convex corner and z lies inside
            inside = Point((mx[0] + zx) / 2, (my[0] + zy) / 2)
            assert cell.nec_contains(inside)
            assert locate_nec(idx, inside) is cell


def test_locate_matches_nec_membership_scan():
    rng = random.Random(11)
    S = general_position(60, 120, rng)
    idx = build_staircase_index(S, 3)
    for _ in range(1000):
        # integer probes hit edges and vertices often
        p = random_probe(120, rng)
        owners = [cell for cell in idx.cells if cell.nec_contains(p)]
        assert len(owners) == 1
        assert locate_nec(idx, p) is owners[0]


@pytest.mark.parametrize("c", [1, 2, 3, 4, 5])
def test_closest_c_matches_oracle(c):
    rng = random.Random(100 + c)
    for _ in range(5):
        S = general_position(rng.randint(c, 200), 1000, rng)
        idx = build_staircase_index(S, c)
        for _ in range(200):
            p = random_probe(1000, rng)
            assert ids(closest_c_query(idx, p)) == ids(brute_closest_c(S, p, c))


def test_answers_sorted_by_insertion_order_equal_l1_order():
    rng = random.Random(5)
    S = general_position(80, 300, rng)
    order = sorted(S, key=lambda p: p.x + p.y)
    rank = {p.id: i for i, p in enumerate(order)}
    for _ in range(300):
        p = random_probe(300, rng)
        ne = [q for q in S if in_ne(p, q)]
        for a in ne:
            for b in ne:
                if rank[a.id] < rank[b.id]:
                    assert d1(p, a) < d1(p, b)


def test_debug_build_depth_structure():
    rng = random.Random(9)
    for _ in range(10):
        n = rng.randint(1, 60)
        c = rng.randint(1, min(4, n))
        idx = build_staircase_index(general_position(n, 400, rng), c, debug=True)
        assert len(idx.trace) == n
        for rec in idx.trace:
            assert rec.depth0_cells == 1 and rec.point_in_depth0
            for depths in (rec.left_depths, rec.down_depths):
                m = min(len(depths), c)
                assert depths[:m] == list(range(m))
                assert all(d >= c for d in depths[c:])


def test_split_edge_growth_bounds():
    rng = random.Random(12)
    seen = set()
    for _ in range(20):
        n = rng.randint(1, 50)
        c = rng.randint(1, min(5, n))
        idx = build_staircase_index(general_position(n, 400, rng), c, debug=True)
        for rec in idx.trace:
            for kind, grown in rec.split_edge_growth:
                seen.add(kind)
                assert grown <= (4 if kind == "sw" else 3)
    assert seen == {"h", "v", "sw"}


def test_stored_depth_is_saturated_dominance_count():
    rng = random.Random(14)
    S = general_position(40, 200, rng)
    order = sorted(S, key=lambda p: p.x + p.y)
    c = 3
    idx = build_staircase_index(S, c)
    for cell in idx.cells:
        zx, zy = cell.z
        inserted = order[: cell.created]
        count = sum(1 for q in inserted if q.x >= zx and q.y >= zy)
        assert cell.depth == min(count, c)


def test_bounds_at_ten_thousand():
    S = general_position(10_000, 10**7, random.Random(0))
    for c in (1, 2, 5):
        idx = build_staircase_index(S, c)
        assert len(idx.cells) <= 1 + 10_000 * (2 * c - 1)
        assert idx.edge_count() <= 4 + 4 * 10_000 * (2 * c - 1)


def test_rejects_bad_input():
    with pytest.raises(GeneralPositionError):
        build_staircase_index([Point(0, 0, 0), Point(0, 5, 1)], 1)
    S = [Point(0, 0, 0), Point(1, 2, 1)]
    with pytest.raises(ValueError):
        build_staircase_index(S, 3)
    with pytest.raises(ValueError):
        build_staircase_index(S, 0)
    with pytest.raises(ValueError):
        build_staircase_index([Point(0, 0, 0), Point(1, 2, 0)], 1)


@settings(max_examples=60, deadline=None)
@given(point_sets(max_n=30, min_n=1), st.integers(1, 5), st.lists(probes(), min_size=1, max_size=30))
def test_property_staircase(S, c, qs):
    c = min(c, len(S))
    idx = build_staircase_index(S, c)
    assert all(cell.is_staircase() for cell in idx.cells)
    assert len(idx.cells) <= idx.cell_bound()
    assert count_edges(idx.cells) <= idx.edge_bound()
    for p in qs:
        owners = [cell for cell in idx.cells if cell.nec_contains(p)]
        assert owners == [locate_nec(idx, p)]
        assert ids(closest_c_query(idx, p)) == ids(brute_closest_c(S, p, c))
