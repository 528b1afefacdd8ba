"""Exact planar primitives shared by every index in the package.

Coordinates are Python ints or ``fractions.Fraction``; nothing here ever
rounds.  Unbounded values use ``math.inf``, which compares exactly against
both.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]

INF = math.inf


@dataclass(frozen=True, slots=True)
class Point:
    x: Number
    y: Number
    id: int = -1


@dataclass(frozen=True, slots=True)
class WeightedPoint:
    point: Point
    weight: object

    @property
    def x(self):
        return self.point.x

    @property
    def y(self):
        return self.point.y

    @property
    def id(self) -> int:
        return self.point.id


@dataclass(frozen=True, slots=True)
class Square:
    """Closed axis-parallel square ``[ax, bx] x [ay, by]``."""

    ax: Number
    ay: Number
    bx: Number
    by: Number

    def __post_init__(self):
        if self.bx - self.ax != self.by - self.ay:
            raise ValueError(f"not a square: {self}")
        if self.bx - self.ax <= 0:
            raise ValueError(f"square side must be positive: {self}")

    @classmethod
    def from_corner(cls, ax: Number, ay: Number, side: Number) -> "Square":
        return cls(ax, ay, ax + side, ay + side)

    @property
    def side(self) -> Number:
        return self.bx - self.ax

    def contains(self, p: Point) -> bool:
        return self.ax <= p.x <= self.bx and self.ay <= p.y <= self.by


class Orientation(enum.Enum):
    """Corner of a square that a query point anchors."""

    BOTTOM_LEFT = "bottom-left"
    BOTTOM_RIGHT = "bottom-right"
    TOP_RIGHT = "top-right"
    TOP_LEFT = "top-left"

    @property
    def signs(self) -> tuple[int, int]:
        return _SIGNS[self]


_SIGNS = {
    Orientation.BOTTOM_LEFT: (1, 1),
    Orientation.BOTTOM_RIGHT: (-1, 1),
    Orientation.TOP_RIGHT: (-1, -1),
    Orientation.TOP_LEFT: (1, -1),
}


@dataclass(frozen=True)
class ClosestPairAnswer:
    """``distance_sq`` is ``math.inf`` and ``pair`` is None below two points."""

    distance_sq: object
    pair: tuple | None = None

    @property
    def found(self) -> bool:
        return self.pair is not None


NO_PAIR = ClosestPairAnswer(math.inf, None)


@dataclass(frozen=True)
class SquareWithPoints:
    """Smallest anchored square holding ``c`` points.

    ``points`` are in (d_inf, id) order; ``defining_point`` is the last of
    them and lies on the edge opposite the anchor.
    """

    anchor: Point
    orientation: Orientation
    side: object
    points: tuple
    defining_point: Point

    def contains(self, p: Point) -> bool:
        sx, sy = self.orientation.signs
        dx = sx * (p.x - self.anchor.x)
        dy = sy * (p.y - self.anchor.y)
        return 0 <= dx <= self.side and 0 <= dy <= self.side


@dataclass(frozen=True)
class YaoEdge:
    point: Point
    weight_sq: object
    neighbor: Point


def d1(p: Point, q: Point) -> Number:
    return abs(p.x - q.x) + abs(p.y - q.y)


def d_inf(p: Point, q: Point) -> Number:
    return max(abs(p.x - q.x), abs(p.y - q.y))


def d_euclid_sq(p: Point, q: Point) -> Number:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def shear(q: Point) -> Point:
    """Map ``(x, y)`` to ``(x, y - x)``; turns the NNE cone into a quadrant."""
    return Point(q.x, q.y - q.x, q.id)


def reflect(p: Point, o: Orientation) -> Point:
    """Reflect so that an ``o``-anchored query becomes bottom-left anchored."""
    sx, sy = _SIGNS[o]
    return Point(sx * p.x, sy * p.y, p.id)


def in_quadrant(center: Point, q: Point, k: int) -> bool:
    """Closed quadrant membership, numbered counter-clockwise from NE."""
    if k == 1:
        return q.x >= center.x and q.y >= center.y
    if k == 2:
        return q.x <= center.x and q.y >= center.y
    if k == 3:
        return q.x <= center.x and q.y <= center.y
    if k == 4:
        return q.x >= center.x and q.y <= center.y
    raise ValueError(f"quadrant index must be 1..4, got {k}")


def in_ne(center: Point, q: Point) -> bool:
    return q.x >= center.x and q.y >= center.y


class Cone(enum.Enum):
    NNE = "nne"
    ENE = "ene"


def in_cone(center: Point, q: Point, cone: Cone) -> bool:
    # the slope-1 boundary ray belongs to both cones
    if not in_ne(center, q):
        return False
    dx = q.x - center.x
    dy = q.y - center.y
    if cone is Cone.NNE:
        return dy >= dx
    return dy <= dx


# Reflection taking quadrant Q_k onto Q_1.
QUADRANT_FRAME = {
    1: Orientation.BOTTOM_LEFT,
    2: Orientation.BOTTOM_RIGHT,
    3: Orientation.TOP_RIGHT,
    4: Orientation.TOP_LEFT,
}


class GeneralPositionError(ValueError):
    def __init__(self, p: Point, q: Point, condition: str):
        super().__init__(f"points {p.id} and {q.id} share a {condition}: {p} {q}")
        self.pair = (p, q)
        self.condition = condition


@dataclass(frozen=True)
class Violation:
    p: Point
    q: Point
    condition: str


def validate_general_position(points: Sequence[Point]) -> Violation | None:
    """Return the first pair sharing a vertical, horizontal or slope -1 line.

    ``None`` means the set is in general position.
    """
    checks = (
        ("vertical line", lambda p: p.x),
        ("horizontal line", lambda p: p.y),
        ("slope -1 line", lambda p: p.x + p.y),
    )
    for condition, key in checks:
        seen: dict = {}
        for p in points:
            k = key(p)
            if k in seen:
                return Violation(seen[k], p, condition)
            seen[k] = p
    return None


def require_general_position(points: Sequence[Point]) -> None:
    v = validate_general_position(points)
    if v is not None:
        raise GeneralPositionError(v.p, v.q, v.condition)


def require_distinct_ids(points: Iterable[Point]) -> None:
    seen = set()
    for p in points:
        if p.id in seen:
            raise ValueError(f"duplicate point id {p.id}")
        seen.add(p.id)


def require_distinct_points(points: Sequence[Point]) -> None:
    require_distinct_ids(points)
    seen: dict = {}
    for p in points:
        k = (p.x, p.y)
        if k in seen:
            raise ValueError(f"points {seen[k].id} and {p.id} coincide at {k}")
        seen[k] = p


def as_points(coords: Iterable[tuple]) -> list[Point]:
    """Build ids ``0..n-1`` from ``(x, y)`` pairs."""
    return [Point(x, y, i) for i, (x, y) in enumerate(coords)]
