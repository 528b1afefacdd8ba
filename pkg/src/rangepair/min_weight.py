"""Range minimum-weight queries answered by a range closest-pair backend.

Weights are replaced by their ranks ``r/(2n)``.  Each point ``p`` gets two
horizontal satellites at distance ``delta_hat * w(p) / 3``, where
``delta_hat`` is a rational lower bound on the closest-pair distance of the
input.  Inside any square holding two or more input points, the closest
pair of the doubled set is then a point and one of its own satellites, and
that point has the smallest weight in the square.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Protocol, Sequence

from .closest_pair import build_rcp
from .cones import SparseReportIndex
from .geometry import ClosestPairAnswer, Point, Square, WeightedPoint, require_distinct_points
from .oracle import brute_closest_pair_in_range

# digits kept when rounding an irrational closest-pair distance down
SQRT_SCALE = 10**6


class InternalInconsistencyError(RuntimeError):
    """The closest-pair backend returned a pair the construction rules out."""


class CpIndex(Protocol):
    def query(self, R: Square) -> ClosestPairAnswer: ...


CpBackend = Callable[[Sequence[Point]], CpIndex]


class BruteClosestPair:
    def __init__(self, points: Sequence[Point]):
        self.points = list(points)

    def query(self, R: Square) -> ClosestPairAnswer:
        return brute_closest_pair_in_range(self.points, R)


@dataclass(frozen=True)
class NormalizedWeights:
    rank_weight: dict
    original_weight: dict


def normalize_weights(S: Sequence[WeightedPoint]) -> NormalizedWeights:
    """Rank weights ``r/(2n)``, equal weights ordered by point id."""
    n = len(S)
    if n == 0:
        raise ValueError("cannot normalize the weights of an empty set")
    order = sorted(S, key=lambda w: (w.weight, w.id))
    rank = {w.id: Fraction(r, 2 * n) for r, w in enumerate(order, 1)}
    return NormalizedWeights(rank, {w.id: w.weight for w in S})


def min_distance_sq(points: Sequence[Point]):
    """Exact smallest squared pairwise distance (x-sorted sweep with pruning)."""
    if len(points) < 2:
        raise ValueError("need at least two points")
    pts = sorted(points, key=lambda p: (p.x, p.y))
    best = None
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            dx = q.x - p.x
            if best is not None and dx * dx >= best:
                break
            dy = q.y - p.y
            d = dx * dx + dy * dy
            if best is None or d < best:
                best = d
    return best


def _sqrt_floor(v) -> Fraction:
    v = Fraction(v)
    num, den = v.numerator, v.denominator
    r = math.isqrt(num * den)
    if r * r == num * den:
        return Fraction(r, den)
    return Fraction(math.isqrt(num * den * SQRT_SCALE**2), den * SQRT_SCALE)


def compute_delta_hat(S: Sequence[Point]) -> Fraction:
    """Rational ``delta_hat`` with ``delta/2 <= delta_hat <= delta``."""
    D = min_distance_sq(S)
    if D <= 0:
        raise ValueError("points must be distinct")
    dh = _sqrt_floor(D)
    if dh <= 0 or 4 * dh * dh < D:
        # too coarse for a very small distance: fall back to halving
        dh = Fraction(1)
        while dh * dh > D:
            dh /= 2
    assert 0 < dh and dh * dh <= D
    return dh


@dataclass(frozen=True)
class DoubledPointSet:
    """Base points carry ids ``0..n-1``; ``p+`` is ``n+i`` and ``p-`` is ``2n+i``.

    All ``3n`` points are stored multiplied by ``scale``, the common
    denominator of every coordinate, so the closest-pair backend works on
    integers.  Uniform scaling keeps square membership and distance order.
    """

    inputs: tuple
    base: tuple
    plus: tuple
    minus: tuple
    delta_hat: object
    scale: int
    weights: NormalizedWeights

    @property
    def n(self) -> int:
        return len(self.base)

    def all_points(self) -> list[Point]:
        return [*self.base, *self.plus, *self.minus]

    def to_frame(self, R: Square) -> Square:
        k = self.scale
        return Square(R.ax * k, R.ay * k, R.bx * k, R.by * k)

    def source(self, pid: int) -> int:
        """Index of the base point an id of the doubled set comes from."""
        return pid % self.n

    def is_base(self, pid: int) -> bool:
        return pid < self.n


def _int(v):
    return v.numerator if isinstance(v, Fraction) else v


def build_doubled_set(S: Sequence[WeightedPoint], delta_hat=None) -> DoubledPointSet:
    n = len(S)
    if n < 2:
        raise ValueError("the doubled set needs at least two points")
    pts = [w.point for w in S]
    require_distinct_points(pts)
    if delta_hat is None:
        delta_hat = compute_delta_hat(pts)
    elif not 0 < delta_hat or delta_hat * delta_hat > min_distance_sq(pts):
        raise ValueError(f"delta_hat={delta_hat} is not a lower bound on the closest-pair distance")
    nw = normalize_weights(S)
    offsets = [Fraction(delta_hat) * nw.rank_weight[w.id] / 3 for w in S]
    scale = math.lcm(*(Fraction(v).denominator for w in S for v in (w.x, w.y)),
                     *(o.denominator for o in offsets))
    base, plus, minus = [], [], []
    for i, (w, off) in enumerate(zip(S, offsets)):
        x = _int(Fraction(w.x) * scale)
        y = _int(Fraction(w.y) * scale)
        o = _int(off * scale)
        base.append(Point(x, y, i))
        plus.append(Point(x + o, y, n + i))
        minus.append(Point(x - o, y, 2 * n + i))
    return DoubledPointSet(tuple(S), tuple(base), tuple(plus), tuple(minus), delta_hat, scale, nw)


class RmwFromCpIndex:
    def __init__(self, S: Sequence[WeightedPoint], cp_backend: CpBackend = BruteClosestPair,
                 delta_hat=None):
        self.inputs = list(S)
        self.membership = SparseReportIndex([w.point for w in self.inputs], 1)
        self.by_id = {w.id: w for w in self.inputs}
        self.doubled = None
        self.cp_index = None
        if len(self.inputs) >= 2:
            self.doubled = build_doubled_set(self.inputs, delta_hat)
            self.cp_index = cp_backend(self.doubled.all_points())

    def query(self, R: Square) -> WeightedPoint | None:
        few = self.membership.query(R)
        if few is not None:
            return self.by_id[few[0].id] if few else None
        ans = self.cp_index.query(self.doubled.to_frame(R))
        if ans.pair is None:
            raise InternalInconsistencyError(f"no pair returned for {R} holding two or more points")
        a, b = ans.pair
        d = self.doubled
        if d.is_base(a.id) == d.is_base(b.id) or d.source(a.id) != d.source(b.id):
            raise InternalInconsistencyError(f"closest pair {a} {b} is not a point and its own satellite")
        return d.inputs[d.source(a.id)]


def build_rmw_from_cp(S: Sequence[WeightedPoint], cp_backend: CpBackend = BruteClosestPair,
                      delta_hat=None) -> RmwFromCpIndex:
    pts = [w.point for w in S]
    require_distinct_points(pts)
    return RmwFromCpIndex(S, cp_backend, delta_hat)


def rmw_from_cp_query(index: RmwFromCpIndex, R: Square) -> WeightedPoint | None:
    return index.query(R)


def rcp_backend(points: Sequence[Point]):
    """Closest-pair backend built from the min-weight reduction and a range tree."""
    return build_rcp(points)
