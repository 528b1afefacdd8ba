"""Random inputs shared by the test modules."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from rangepair.geometry import Point, Square, WeightedPoint


def general_position(n: int, coord_range: int, rng: random.Random) -> list[Point]:
    xs, ys, diag, pts = set(), set(), set(), []
    while len(pts) < n:
        x, y = rng.randrange(coord_range), rng.randrange(coord_range)
        if x in xs or y in ys or x + y in diag:
            continue
        xs.add(x)
        ys.add(y)
        diag.add(x + y)
        pts.append(Point(x, y, len(pts)))
    return pts


def random_square(coord_range: int, rng: random.Random) -> Square:
    side = rng.randint(1, coord_range)
    lo = -side // 2
    return Square.from_corner(rng.randrange(lo, coord_range), rng.randrange(lo, coord_range), side)


def random_probe(coord_range: int, rng: random.Random) -> Point:
    pad = coord_range // 10 + 1
    return Point(rng.randrange(-pad, coord_range + pad), rng.randrange(-pad, coord_range + pad))


def with_weights(points, rng: random.Random, spread: int = 50) -> list[WeightedPoint]:
    return [WeightedPoint(p, rng.randrange(spread)) for p in points]


@st.composite
def point_sets(draw, max_n: int = 40, coord_range: int = 200, min_n: int = 0):
    """General-position point sets; rejects duplicate x, y or x + y."""
    n = draw(st.integers(min_n, max_n))
    coords = draw(st.lists(
        st.tuples(st.integers(0, coord_range), st.integers(0, coord_range)),
        min_size=n, max_size=n,
        unique_by=(lambda t: t[0], lambda t: t[1], lambda t: t[0] + t[1])))
    return [Point(x, y, i) for i, (x, y) in enumerate(coords)]


@st.composite
def squares(draw, coord_range: int = 200):
    side = draw(st.integers(1, coord_range + 20))
    ax = draw(st.integers(-20 - side, coord_range + 10))
    ay = draw(st.integers(-20 - side, coord_range + 10))
    return Square.from_corner(ax, ay, side)


def probes(coord_range: int = 200):
    return st.builds(Point, st.integers(-20, coord_range + 20), st.integers(-20, coord_range + 20))
