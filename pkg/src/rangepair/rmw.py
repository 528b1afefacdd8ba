"""Range minimum-weight queries and the backend protocol the reductions use.

Any object with ``query(square) -> WeightedPoint | None`` can serve as a
minimum-weight backend; a backend *factory* is a callable taking the
weighted point list and returning such an object.
"""
from __future__ import annotations

import bisect
from typing import Callable, Protocol, Sequence

from .geometry import Square, WeightedPoint


class RmwIndex(Protocol):
    def query(self, R: Square) -> WeightedPoint | None: ...


RmwBackend = Callable[[Sequence[WeightedPoint]], RmwIndex]


class _MinTree:
    """Iterative segment tree over a fixed list of comparable keys."""

    __slots__ = ("n", "t")

    def __init__(self, keys: list):
        n = len(keys)
        t = [None] * n + keys
        for i in range(n - 1, 0, -1):
            a, b = t[2 * i], t[2 * i + 1]
            t[i] = a if b is None or (a is not None and a <= b) else b
        self.n = n
        self.t = t

    def min(self, lo: int, hi: int):
        best = None
        t = self.t
        lo += self.n
        hi += self.n
        while lo < hi:
            if lo & 1:
                v = t[lo]
                if best is None or v < best:
                    best = v
                lo += 1
            if hi & 1:
                hi -= 1
                v = t[hi]
                if best is None or v < best:
                    best = v
            lo >>= 1
            hi >>= 1
        return best


class LayeredRangeTree:
    """Range tree over x with y-sorted, min-augmented secondary lists.

    O(m log m) space; rectangle queries in O(log^2 m).  Equal weights are
    resolved toward the lowest point id.
    """

    def __init__(self, points: Sequence[WeightedPoint]):
        pts = sorted(points, key=lambda w: (w.x, w.id))
        self.points = pts
        self.xs = [w.x for w in pts]
        m = len(pts)
        size = 1
        while size < max(m, 1):
            size *= 2
        self.size = size
        ys: list = [[] for _ in range(2 * size)]
        trees: list = [None] * (2 * size)
        rows: list = [[] for _ in range(2 * size)]
        for i, w in enumerate(pts):
            rows[size + i] = [(w.y, w.weight, w.id, i)]
        for node in range(size - 1, 0, -1):
            rows[node] = sorted(rows[2 * node] + rows[2 * node + 1])
        for node in range(1, 2 * size):
            row = rows[node]
            if row:
                ys[node] = [r[0] for r in row]
                trees[node] = _MinTree([(r[1], r[2], r[3]) for r in row])
        self.ys = ys
        self.trees = trees

    def query_rect(self, x0, y0, x1, y1) -> WeightedPoint | None:
        lo = bisect.bisect_left(self.xs, x0) + self.size
        hi = bisect.bisect_right(self.xs, x1) + self.size
        best = None
        while lo < hi:
            if lo & 1:
                best = self._node_min(lo, y0, y1, best)
                lo += 1
            if hi & 1:
                hi -= 1
                best = self._node_min(hi, y0, y1, best)
            lo >>= 1
            hi >>= 1
        return None if best is None else self.points[best[2]]

    def _node_min(self, node, y0, y1, best):
        row = self.ys[node]
        a = bisect.bisect_left(row, y0)
        b = bisect.bisect_right(row, y1)
        if a >= b:
            return best
        v = self.trees[node].min(a, b)
        return v if best is None or v < best else best

    def query(self, R: Square) -> WeightedPoint | None:
        return self.query_rect(R.ax, R.ay, R.bx, R.by)


def build_rmw_baseline(V: Sequence[WeightedPoint]) -> LayeredRangeTree:
    return LayeredRangeTree(V)


def rmw_query(index: RmwIndex, R: Square) -> WeightedPoint | None:
    return index.query(R)
