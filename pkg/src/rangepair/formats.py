"""Line-oriented text formats for point sets and query workloads.

Point file::

    # rangepair points v1
    n 3 weighted 1
    0 10 4 7
    1 3 9 2
    2 5 1 11

Workload file, one query per line after the header::

    # rangepair workload v1
    closest_c 4 7 3
    anchored_square 4 7 5 top-left
    sparse_report 0 0 10 9
    rcp 0 0 10
    rmw 0 0 10

Square parameters are ``ax ay side``.  Numbers are decimal integers or
``p/q`` rationals.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, TextIO

from .geometry import Orientation, Point, Square, WeightedPoint, validate_general_position

POINTS_HEADER = "# rangepair points v1"
WORKLOAD_HEADER = "# rangepair workload v1"
KINDS = ("closest_c", "anchored_square", "sparse_report", "rcp", "rmw")


class FormatError(ValueError):
    pass


def parse_number(tok: str):
    try:
        v = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"not an exact number: {tok!r}") from None
    return v.numerator if v.denominator == 1 else v


def fmt_number(v) -> str:
    if isinstance(v, Fraction) and v.denominator == 1:
        v = v.numerator
    return str(v)


@dataclass
class PointSet:
    points: list
    weights: list | None = None

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def weighted_points(self) -> list[WeightedPoint]:
        if self.weights is None:
            raise FormatError("point file carries no weights")
        return [WeightedPoint(p, w) for p, w in zip(self.points, self.weights)]


def _content_lines(f: TextIO):
    for lineno, raw in enumerate(f, 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line.split()


def read_points(f: TextIO) -> PointSet:
    first = f.readline().strip()
    if first != POINTS_HEADER:
        raise FormatError(f"expected {POINTS_HEADER!r}, got {first!r}")
    lines = _content_lines(f)
    try:
        _, head = next(lines)
    except StopIteration:
        raise FormatError("missing 'n' line") from None
    if len(head) != 4 or head[0] != "n" or head[2] != "weighted":
        raise FormatError(f"bad size line: {' '.join(head)}")
    n, weighted = int(head[1]), head[3] == "1"
    points, weights = [], []
    for lineno, toks in lines:
        if len(toks) != (4 if weighted else 3):
            raise FormatError(f"line {lineno}: expected {4 if weighted else 3} fields")
        pid = int(toks[0])
        if pid != len(points):
            raise FormatError(f"line {lineno}: ids must run 0..n-1, got {pid}")
        points.append(Point(parse_number(toks[1]), parse_number(toks[2]), pid))
        if weighted:
            weights.append(parse_number(toks[3]))
    if len(points) != n:
        raise FormatError(f"header says n={n} but {len(points)} records follow")
    return PointSet(points, weights if weighted else None)


def write_points(f: TextIO, ps: PointSet) -> None:
    f.write(POINTS_HEADER + "\n")
    f.write(f"n {len(ps.points)} weighted {int(ps.weighted)}\n")
    for i, p in enumerate(ps.points):
        rec = [str(p.id), fmt_number(p.x), fmt_number(p.y)]
        if ps.weighted:
            rec.append(fmt_number(ps.weights[i]))
        f.write(" ".join(rec) + "\n")


@dataclass(frozen=True)
class Query:
    kind: str
    point: Point | None = None
    square: Square | None = None
    c: int | None = None
    orientation: Orientation | None = None

    def to_line(self) -> str:
        if self.kind == "closest_c":
            parts = [fmt_number(self.point.x), fmt_number(self.point.y), str(self.c)]
        elif self.kind == "anchored_square":
            parts = [fmt_number(self.point.x), fmt_number(self.point.y), str(self.c),
                     self.orientation.value]
        else:
            R = self.square
            parts = [fmt_number(R.ax), fmt_number(R.ay), fmt_number(R.side)]
            if self.kind == "sparse_report":
                parts.append(str(self.c))
        return " ".join([self.kind, *parts])


_ARITY = {"closest_c": 3, "anchored_square": 4, "sparse_report": 4, "rcp": 3, "rmw": 3}


def parse_query(toks: list[str]) -> Query:
    kind = toks[0]
    if kind not in _ARITY:
        raise FormatError(f"unknown query kind {kind!r}")
    args = toks[1:]
    if len(args) != _ARITY[kind]:
        raise FormatError(f"{kind} takes {_ARITY[kind]} parameters, got {len(args)}")
    if kind in ("closest_c", "anchored_square"):
        p = Point(parse_number(args[0]), parse_number(args[1]))
        c = int(args[2])
        if c < 1:
            raise FormatError(f"c must be positive, got {c}")
        o = None
        if kind == "anchored_square":
            try:
                o = Orientation(args[3])
            except ValueError:
                raise FormatError(f"unknown orientation {args[3]!r}") from None
        return Query(kind, point=p, c=c, orientation=o)
    side = parse_number(args[2])
    if side <= 0:
        raise FormatError(f"square side must be positive, got {side}")
    R = Square.from_corner(parse_number(args[0]), parse_number(args[1]), side)
    c = None
    if kind == "sparse_report":
        c = int(args[3])
        if c < 0:
            raise FormatError(f"c must be non-negative, got {c}")
    return Query(kind, square=R, c=c)


def read_workload(f: TextIO) -> list[Query]:
    first = f.readline().strip()
    if first != WORKLOAD_HEADER:
        raise FormatError(f"expected {WORKLOAD_HEADER!r}, got {first!r}")
    out = []
    for lineno, toks in _content_lines(f):
        try:
            out.append(parse_query(toks))
        except FormatError as e:
            raise FormatError(f"line {lineno}: {e}") from None
    return out


def write_workload(f: TextIO, queries: Iterable[Query]) -> None:
    f.write(WORKLOAD_HEADER + "\n")
    for q in queries:
        f.write(q.to_line() + "\n")


class RangeTooSmall(ValueError):
    pass


def generate_points(n: int, coord_range: int, seed: int, weighted: bool = False,
                    max_attempts: int | None = None) -> PointSet:
    """Rejection-sample ``n`` points of ``[0, coord_range)^2`` in general position."""
    if n < 0:
        raise ValueError("n must be non-negative")
    # n distinct x values need n <= range; x + y takes at most 2*range - 1 values
    if n > coord_range:
        raise RangeTooSmall(f"cannot place {n} points with distinct coordinates in [0, {coord_range})")
    rng = random.Random(seed)
    xs, ys, diag = set(), set(), set()
    pts = []
    budget = max_attempts if max_attempts is not None else 200 * n + 1000
    while len(pts) < n:
        if budget == 0:
            raise RangeTooSmall(f"gave up placing {n} points in [0, {coord_range}); use a larger range")
        budget -= 1
        x, y = rng.randrange(coord_range), rng.randrange(coord_range)
        if x in xs or y in ys or x + y in diag:
            continue
        xs.add(x)
        ys.add(y)
        diag.add(x + y)
        pts.append(Point(x, y, len(pts)))
    assert validate_general_position(pts) is None
    weights = [rng.randrange(10**6) for _ in pts] if weighted else None
    return PointSet(pts, weights)


def generate_workload(points: list, coord_range: int, m: int, seed: int,
                      kinds: Iterable[str] = KINDS, c_max: int = 5) -> list[Query]:
    """Random queries spread over the point set's bounding range."""
    rng = random.Random(seed)
    kinds = list(kinds)
    n = len(points)
    orientations = list(Orientation)
    out = []
    lo, hi = -coord_range // 10, coord_range + coord_range // 10
    for _ in range(m):
        kind = rng.choice(kinds)
        if kind in ("closest_c", "anchored_square"):
            p = Point(rng.randrange(lo, hi), rng.randrange(lo, hi))
            c = rng.randint(1, max(1, min(c_max, n)))
            o = rng.choice(orientations) if kind == "anchored_square" else None
            out.append(Query(kind, point=p, c=c, orientation=o))
        else:
            side = rng.randint(1, max(1, coord_range))
            R = Square.from_corner(rng.randrange(lo - side // 2, hi), rng.randrange(lo - side // 2, hi), side)
            c = rng.randint(0, max(0, min(9, n - 1))) if kind == "sparse_report" else None
            out.append(Query(kind, square=R, c=c))
    return out
