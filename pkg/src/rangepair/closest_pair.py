"""Range closest-pair queries over squares, reduced to minimum-weight queries.

A query square ``R`` with at most 9 points is answered by brute force.
Otherwise the smallest corner-anchored squares holding 5 points fix a
scale ``delta``.  The four ``delta``-sized corner squares are searched
directly.  Every other candidate pair is a quadrant nearest-neighbour
(Yao) edge whose source lies in a square of side ``side - delta``, found
with one minimum-weight query per quadrant.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .cones import AnchoredSquareIndex, SparseReportIndex
from .geometry import (
    NO_PAIR,
    QUADRANT_FRAME,
    ClosestPairAnswer,
    Orientation,
    Point,
    Square,
    WeightedPoint,
    YaoEdge,
    d_euclid_sq,
    reflect,
    require_distinct_points,
)
from .rmw import LayeredRangeTree, RmwBackend, RmwIndex

STEP1_C = 9
CORNER_C = 5

# Corner of R at which each Step 2 square is anchored.
STEP2_CORNERS = (
    Orientation.BOTTOM_LEFT,
    Orientation.BOTTOM_RIGHT,
    Orientation.TOP_RIGHT,
    Orientation.TOP_LEFT,
)


def compute_yao_weights(S: Sequence[Point], k: int) -> list[YaoEdge]:
    """Nearest neighbour of each point inside its closed quadrant ``Q_k``.

    Points with an empty quadrant are omitted.  Weights are squared
    Euclidean distances; ties go to the lower neighbour id.
    """
    o = QUADRANT_FRAME[k]
    frame = sorted(((reflect(p, o), p) for p in S), key=lambda t: (t[0].x, t[0].y))
    edges = []
    for i, (rp, p) in enumerate(frame):
        best = None
        nn = None
        for rq, q in frame[i + 1:]:
            dx = rq.x - rp.x
            if best is not None and dx * dx > best[0]:
                break
            if rq.y < rp.y:
                continue
            key = (d_euclid_sq(rp, rq), q.id)
            if best is None or key < best:
                best = key
                nn = q
        if nn is not None:
            edges.append(YaoEdge(p, best[0], nn))
    edges.sort(key=lambda e: e.point.id)
    return edges


@dataclass(frozen=True)
class Rect:
    """Closed rectangle; zero width or height is allowed."""

    x0: object
    y0: object
    x1: object
    y1: object

    def contains(self, p: Point) -> bool:
        return self.x0 <= p.x <= self.x1 and self.y0 <= p.y <= self.y1

    @property
    def area(self):
        return (self.x1 - self.x0) * (self.y1 - self.y0)


@dataclass(frozen=True)
class SquarePartition:
    """Corner squares ``c``, strips and centre ``a``, and the four ``b`` squares.

    ``c[k]`` sits in the corner of R that quadrant ``Q_k`` points to, and
    ``b[k]`` is the side ``l - delta`` square at the opposite corner, so a
    point of ``b[k]`` has its whole ``delta``-neighbourhood in ``Q_k`` inside R.
    Keys run 1..4 for ``c`` and ``b`` and 1..5 for ``a``.
    """

    R: Square
    delta: object
    c: dict
    a: dict
    b: dict


def partition_square(R: Square, delta) -> SquarePartition:
    ax, ay, bx, by = R.ax, R.ay, R.bx, R.by
    if not 0 < 2 * delta <= R.side:
        raise ValueError(f"delta must lie in (0, side/2], got {delta} for side {R.side}")
    d = delta
    c = {
        1: Square(bx - d, by - d, bx, by),
        2: Square(ax, by - d, ax + d, by),
        3: Square(ax, ay, ax + d, ay + d),
        4: Square(bx - d, ay, bx, ay + d),
    }
    a = {
        1: Rect(ax + d, by - d, bx - d, by),
        2: Rect(ax, ay + d, ax + d, by - d),
        3: Rect(ax + d, ay + d, bx - d, by - d),
        4: Rect(bx - d, ay + d, bx, by - d),
        5: Rect(ax + d, ay, bx - d, ay + d),
    }
    b = {
        1: Square(ax, ay, bx - d, by - d),
        2: Square(ax + d, ay, bx, by - d),
        3: Square(ax + d, ay + d, bx, by),
        4: Square(ax, ay + d, bx - d, by),
    }
    return SquarePartition(R, delta, c, a, b)


@dataclass
class QueryAudit:
    """Counters for conditions the correctness argument rules out or bounds."""

    queries: int = 0
    step1_answered: int = 0
    pigeonhole_violations: int = 0
    delta_out_of_range: int = 0
    step4_overflows: int = 0
    step4_fallback_scans: int = 0


def _closest_among(points: Sequence[Point]) -> ClosestPairAnswer:
    best = NO_PAIR
    for p, q in combinations(points, 2):
        dsq = d_euclid_sq(p, q)
        if best.pair is None or dsq < best.distance_sq:
            best = ClosestPairAnswer(dsq, (p, q))
    return best


def _ordered(ans: ClosestPairAnswer) -> ClosestPairAnswer:
    if ans.pair is None:
        return ans
    p, q = ans.pair
    return ans if p.id < q.id else ClosestPairAnswer(ans.distance_sq, (q, p))


class RcpIndex:
    """Square range closest-pair index over a set of distinct points."""

    def __init__(self, points: Sequence[Point], rmw_backend: RmwBackend = LayeredRangeTree):
        self.points = list(points)
        n = len(self.points)
        self.step1_index = SparseReportIndex(self.points, STEP1_C)
        self.small = n <= STEP1_C
        if self.small:
            return
        self.step2_indexes = {o: AnchoredSquareIndex(self.points, CORNER_C, o) for o in STEP2_CORNERS}
        self.step4_index = SparseReportIndex(self.points, CORNER_C)
        self.yao: dict[int, dict[int, YaoEdge]] = {}
        self.yao_rmw: dict[int, RmwIndex] = {}
        for k in (1, 2, 3, 4):
            edges = compute_yao_weights(self.points, k)
            self.yao[k] = {e.point.id: e for e in edges}
            self.yao_rmw[k] = rmw_backend([WeightedPoint(e.point, e.weight_sq) for e in edges])

    def _corner_points(self, C: Square, audit: QueryAudit | None) -> list[Point]:
        pts = self.step4_index.query(C)
        if pts is not None:
            return pts
        # two points tied on the outer edges of a 5-point corner square
        if audit is not None:
            audit.step4_overflows += 1
        pts = self.step1_index.query(C)
        if pts is not None:
            return pts
        if audit is not None:
            audit.step4_fallback_scans += 1
        return [p for p in self.points if C.contains(p)]

    def query(self, R: Square, audit: QueryAudit | None = None) -> ClosestPairAnswer:
        if audit is not None:
            audit.queries += 1
        inside = self.step1_index.query(R)
        if inside is not None:
            if audit is not None:
                audit.step1_answered += 1
            return _ordered(_closest_among(inside))

        side = R.side
        half = Fraction(side, 2) if isinstance(side, int) else side / 2
        corners = {
            Orientation.BOTTOM_LEFT: Point(R.ax, R.ay),
            Orientation.BOTTOM_RIGHT: Point(R.bx, R.ay),
            Orientation.TOP_RIGHT: Point(R.bx, R.by),
            Orientation.TOP_LEFT: Point(R.ax, R.by),
        }
        ell_prime = min(self.step2_indexes[o].query(p).side for o, p in corners.items())
        delta = half if ell_prime > half else ell_prime
        if not 0 < delta <= half:
            if audit is not None:
                audit.delta_out_of_range += 1
            delta = half
        part = partition_square(R, delta)

        best = NO_PAIR
        for k in (1, 2, 3, 4):
            w = _closest_among(self._corner_points(part.c[k], audit))
            if w.pair is not None and (best.pair is None or w.distance_sq < best.distance_sq):
                best = w

        delta_sq = delta * delta
        for k in (1, 2, 3, 4):
            hit = self.yao_rmw[k].query(part.b[k])
            if hit is None or not hit.weight < delta_sq:
                continue
            if best.pair is None or hit.weight < best.distance_sq:
                e = self.yao[k][hit.id]
                best = ClosestPairAnswer(e.weight_sq, (e.point, e.neighbor))

        if audit is not None and 9 * best.distance_sq > 2 * side * side:
            audit.pigeonhole_violations += 1
        return _ordered(best)


def build_rcp(S: Sequence[Point], rmw_backend: RmwBackend = LayeredRangeTree) -> RcpIndex:
    require_distinct_points(S)
    return RcpIndex(S, rmw_backend)


def rcp_query(index: RcpIndex, R: Square, audit: QueryAudit | None = None) -> ClosestPairAnswer:
    return index.query(R, audit)
