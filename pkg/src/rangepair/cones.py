"""Corner-anchored square queries built on two sheared staircase indexes.

For an anchor ``p`` the north-east quadrant splits along the slope-1 line
into the NNE and ENE cones.  Inside NNE the Chebyshev distance to ``p`` is
the height above ``p``; the shear ``(x, y) -> (x, y - x)`` maps NNE onto a
quadrant where L1 distance is that same height, so a ``closest_c`` query
on the sheared set returns the ``c`` lowest cone points.  ENE is handled
by swapping the axes first.  The c-th smallest Chebyshev distance among
both candidate lists is the side of the smallest anchored square.
"""
from __future__ import annotations

from typing import Sequence

from .geometry import (
    Orientation,
    Point,
    Square,
    SquareWithPoints,
    d_inf,
    reflect,
    require_distinct_ids,
    require_general_position,
)
from .staircase import StaircaseIndex, keyed_build


class AnchoredSquareIndex:
    def __init__(self, points: Sequence[Point], c: int,
                 orientation: Orientation = Orientation.BOTTOM_LEFT):
        if c < 1:
            raise ValueError(f"c must be at least 1, got {c}")
        self.c = c
        self.orientation = orientation
        self.points = list(points)
        r = [reflect(p, orientation) for p in self.points]
        # NNE: shear; ENE: swap axes, then shear
        self.nne_index: StaircaseIndex = keyed_build(
            self.points, [q.x for q in r], [q.y - q.x for q in r], c)
        self.ene_index: StaircaseIndex = keyed_build(
            self.points, [q.y for q in r], [q.x - q.y for q in r], c)

    def candidates(self, p: Point) -> list[Point]:
        """The c lowest NNE points and c leftmost ENE points, de-duplicated."""
        q = reflect(p, self.orientation)
        lower = self.nne_index.query_key((q.x, -1), (q.y - q.x, -1))
        left = self.ene_index.query_key((q.y, -1), (q.x - q.y, -1))
        seen = {pt.id for pt in lower}
        return lower + [pt for pt in left if pt.id not in seen]

    def query(self, p: Point) -> SquareWithPoints | None:
        """Smallest square anchored at ``p`` holding ``c`` points, or None.

        None means the anchored quadrant has fewer than ``c`` points.  Ties
        in Chebyshev distance are broken by point id.
        """
        cands = self.candidates(p)
        if len(cands) < self.c:
            return None
        cands.sort(key=lambda q: (d_inf(p, q), q.id))
        chosen = tuple(cands[: self.c])
        return SquareWithPoints(p, self.orientation, d_inf(p, chosen[-1]), chosen, chosen[-1])


def build_anchored_square_index(S: Sequence[Point], c: int,
                                o: Orientation = Orientation.BOTTOM_LEFT) -> AnchoredSquareIndex:
    if not 1 <= c <= max(len(S), 1):
        raise ValueError(f"c must satisfy 1 <= c <= n={len(S)}, got {c}")
    require_distinct_ids(S)
    require_general_position(S)
    return AnchoredSquareIndex(S, c, o)


def smallest_anchored_square(index: AnchoredSquareIndex, p: Point) -> SquareWithPoints | None:
    return index.query(p)


class SparseReportIndex:
    """Decide ``|R ∩ S| <= c`` for a query square and report those points.

    Wraps an anchored-square index with ``c + 1``.  When the square
    anchored at R's bottom-left corner needs to grow past R to collect
    ``c + 1`` points, all of ``R ∩ S`` is among its candidates.
    """

    def __init__(self, points: Sequence[Point], c: int):
        if c < 0:
            raise ValueError(f"c must be non-negative, got {c}")
        self.c = c
        self.points = list(points)
        # every square holds at most n <= c points: plain filtering is O(c)
        self.inner = AnchoredSquareIndex(self.points, c + 1) if len(self.points) > c else None

    def query(self, R: Square) -> list[Point] | None:
        """Points of ``R`` if there are at most ``c``; None means more than ``c``."""
        if self.inner is None:
            return [q for q in self.points if R.contains(q)]
        corner = Point(R.ax, R.ay)
        cands = self.inner.candidates(corner)
        if len(cands) > self.c:
            cands.sort(key=lambda q: (d_inf(corner, q), q.id))
            if R.contains(cands[self.c]):
                return None
        return [q for q in cands if R.contains(q)]


def build_sparse_report_index(S: Sequence[Point], c: int) -> SparseReportIndex:
    if not 0 <= c <= max(len(S) - 1, 0):
        raise ValueError(f"c must satisfy 0 <= c <= n-1={len(S) - 1}, got {c}")
    require_distinct_ids(S)
    require_general_position(S)
    return SparseReportIndex(S, c)


def sparse_range_report(index: SparseReportIndex, R: Square) -> list[Point] | None:
    return index.query(R)
