"""Brute-force reference answers.

Every function here is a plain filter/sort/scan over the input.  Nothing
is imported from the index modules, so these stay usable as ground truth
for tests and for ``rangepair query --verify``.
"""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .geometry import (
    NO_PAIR,
    ClosestPairAnswer,
    Orientation,
    Point,
    Square,
    SquareWithPoints,
    WeightedPoint,
    YaoEdge,
    d1,
    d_euclid_sq,
    d_inf,
    in_ne,
    in_quadrant,
    reflect,
)


def brute_closest_c(S: Sequence[Point], p: Point, c: int) -> list[Point]:
    ne = [q for q in S if in_ne(p, q)]
    ne.sort(key=lambda q: (d1(p, q), q.id))
    return ne[:c]


def brute_closest_pair(points: Sequence[Point]) -> ClosestPairAnswer:
    best = NO_PAIR
    for p, q in combinations(points, 2):
        dsq = d_euclid_sq(p, q)
        if best.pair is None or dsq < best.distance_sq:
            best = ClosestPairAnswer(dsq, (p, q))
    return best


def brute_closest_pair_in_range(S: Sequence[Point], R: Square) -> ClosestPairAnswer:
    return brute_closest_pair([p for p in S if R.contains(p)])


def brute_min_weight_in_range(V: Sequence[WeightedPoint], R: Square) -> WeightedPoint | None:
    inside = [w for w in V if R.contains(w.point)]
    if not inside:
        return None
    return min(inside, key=lambda w: (w.weight, w.point.id))


def brute_count_in_range(S: Sequence[Point], R: Square) -> int:
    return sum(1 for p in S if R.contains(p))


def brute_range_report(S: Sequence[Point], R: Square, c: int) -> list[Point] | None:
    """Points of ``R`` when there are at most ``c`` of them, else None."""
    inside = [p for p in S if R.contains(p)]
    return inside if len(inside) <= c else None


def brute_anchored_square(S: Sequence[Point], p: Point, c: int,
                          o: Orientation = Orientation.BOTTOM_LEFT) -> SquareWithPoints | None:
    """None when fewer than ``c`` points lie in the anchored quadrant."""
    rp = reflect(p, o)
    quad = [q for q in S if in_ne(rp, reflect(q, o))]
    if len(quad) < c:
        return None
    quad.sort(key=lambda q: (d_inf(p, q), q.id))
    chosen = tuple(quad[:c])
    return SquareWithPoints(p, o, d_inf(p, chosen[-1]), chosen, chosen[-1])


def brute_yao_weights(S: Sequence[Point], k: int) -> list[YaoEdge]:
    edges = []
    for p in S:
        best = None
        for q in S:
            if q.id == p.id or not in_quadrant(p, q, k):
                continue
            key = (d_euclid_sq(p, q), q.id)
            if best is None or key < best[0]:
                best = (key, q)
        if best is not None:
            edges.append(YaoEdge(p, best[0][0], best[1]))
    return edges
