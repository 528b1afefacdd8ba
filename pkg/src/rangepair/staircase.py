"""Staircase subdivision answering quadrant c-nearest (``closest_c``) queries.

Points are inserted in increasing ``x + y`` order.  Each insertion shoots a
ray left and a ray down, splits the cells hit between the 1st and c-th
crossed edge, and cuts the cell holding the new point along the boundary
of its south-west quadrant.  Every final cell stores the ``c`` points of
the north-east quadrant of its top-right vertex closest in L1 distance.

Internally every coordinate is a *key*: a ``(value, tiebreak)`` tuple.
Data points carry ``tiebreak = i >= 0`` (their input position) and query
points carry ``-1``.  Lexicographic comparison of keys is an exact
symbolic perturbation: closed-quadrant membership of any query point is
unchanged, while coinciding data coordinates become distinct.  The public
builder still rejects inputs that are not in general position; the
keyed builder is what the cone structures use on sheared point sets.
"""
from __future__ import annotations

import bisect
from array import array
from dataclasses import dataclass, field
from typing import Sequence

from .geometry import INF, Point, require_distinct_ids, require_general_position

NEG = (-INF, 0)
POS = (INF, 0)

Key = tuple
KeyPoint = tuple  # (kx, ky)


class StaircaseInvariantError(AssertionError):
    pass


@dataclass(slots=True, eq=False)
class Cell:
    """A staircase polygon ``SW(z) ∩ ⋃ NE(m)`` over its convex corners ``m``.

    ``corners`` run left to right (x ascending, y descending).  The first
    corner may sit at x = -inf and the last at y = -inf.
    """

    id: int
    top_right: KeyPoint
    corners: list
    created: int
    answer: tuple = ()
    # |NE(z) ∩ S^(k)| at creation, saturated at c
    depth: int = 0

    @property
    def z(self) -> tuple:
        return (self.top_right[0][0], self.top_right[1][0])

    def vertices(self) -> list[tuple]:
        """Boundary ring A, B, C, then the staircase back up to A (values)."""
        (zx, zy) = self.top_right
        cs = self.corners
        ring = [(cs[0][0], zy), (zx, zy), (zx, cs[-1][1])]
        for i in range(len(cs) - 1, -1, -1):
            mx, my = cs[i]
            ring.append((mx, my))
            top = cs[i - 1][1] if i > 0 else zy
            if i > 0:
                ring.append((mx, top))
        return [(vx[0], vy[0]) for vx, vy in ring]

    def segments(self) -> list[tuple]:
        """Boundary edges as ``('h', y, x0, x1)`` / ``('v', x, y0, y1)`` in keys."""
        (zx, zy) = self.top_right
        cs = self.corners
        segs = [("h", zy, cs[0][0], zx), ("v", zx, cs[-1][1], zy)]
        for i, (mx, my) in enumerate(cs):
            top = cs[i - 1][1] if i else zy
            right = cs[i + 1][0] if i + 1 < len(cs) else zx
            segs.append(("v", mx, my, top))
            segs.append(("h", my, mx, right))
        return segs

    def nec_contains_key(self, kx, ky) -> bool:
        (zx, zy) = self.top_right
        if kx > zx or ky > zy:
            return False
        return any(mx < kx and my < ky for mx, my in self.corners)

    def nec_contains(self, p: Point) -> bool:
        """North-east closure membership for an exact query point."""
        return self.nec_contains_key((p.x, -1), (p.y, -1))

    def is_staircase(self) -> bool:
        (zx, zy) = self.top_right
        cs = self.corners
        if not cs:
            return False
        for a, b in zip(cs, cs[1:]):
            if not (a[0] < b[0] and a[1] > b[1]):
                return False
        return cs[-1][0] < zx and cs[0][1] < zy


@dataclass
class IterationRecord:
    """Debug snapshot of one insertion, with brute-force depths of SD^(k-1)."""

    k: int
    depth0_cells: int
    point_in_depth0: bool
    left_depths: list
    down_depths: list
    cells_before: int
    cells_after: int
    edges_before: int
    edges_after: int
    split_edge_growth: list = field(default_factory=list)


class _LineIndex:
    """Cells whose right (or top) edge lies on one line, sorted along it."""

    __slots__ = ("ends", "ids")

    def __init__(self):
        self.ends: list = []
        self.ids: list = []

    def add(self, end, cid):
        i = bisect.bisect_left(self.ends, end)
        self.ends.insert(i, end)
        self.ids.insert(i, cid)

    def remove(self, end, cid):
        i = bisect.bisect_left(self.ends, end)
        assert self.ids[i] == cid
        del self.ends[i]
        del self.ids[i]

    def first_above(self, h):
        return self.ids[bisect.bisect_right(self.ends, h)]


class _Builder:
    def __init__(self, c: int, debug: bool = False):
        self.c = c
        self.debug = debug
        self.cells: dict[int, Cell] = {}
        self.by_right: dict = {}
        self.by_top: dict = {}
        self.next_id = 0
        self.k = 0
        self.trace: list[IterationRecord] = []
        self.inserted: list = []
        self.growth: list = []
        self.top_cell = self._new(POS, POS, [(NEG, NEG)], 0)

    def _new(self, zx, zy, corners, created) -> int:
        cid = self.next_id
        self.next_id += 1
        cell = Cell(cid, (zx, zy), corners, created)
        self.cells[cid] = cell
        line = self.by_right.get(zx)
        if line is None:
            line = self.by_right[zx] = _LineIndex()
        line.add(zy, cid)
        line = self.by_top.get(zy)
        if line is None:
            line = self.by_top[zy] = _LineIndex()
        line.add(zx, cid)
        return cid

    def _drop(self, cid) -> Cell:
        cell = self.cells.pop(cid)
        zx, zy = cell.top_right
        self.by_right[zx].remove(zy, cid)
        self.by_top[zy].remove(zx, cid)
        return cell

    # -- walking -----------------------------------------------------------
    def _left_neighbor(self, cid, h):
        """Cell across the left boundary at height ``h``, or None at -inf."""
        cs = self.cells[cid].corners
        j = bisect.bisect_left(cs, True, key=lambda m: m[1] < h)
        xl = cs[j][0]
        if xl == NEG:
            return None
        return self.by_right[xl].first_above(h)

    def _lower_neighbor(self, cid, v):
        cs = self.cells[cid].corners
        j = bisect.bisect_left(cs, True, key=lambda m: m[0] > v)
        yb = cs[j - 1][1]
        if yb == NEG:
            return None
        return self.by_top[yb].first_above(v)

    def _walk(self, start, coord, step, limit):
        hits = []
        cur = start
        while limit is None or len(hits) < limit:
            cur = step(cur, coord)
            if cur is None:
                break
            hits.append(cur)
        return hits

    # -- splitting ---------------------------------------------------------
    def _note_growth(self, kind, old: Cell, *new):
        # the cut is one shared edge for a line split, two for an SW split
        if self.debug:
            shared = 2 if kind == "sw" else 1
            grown = sum(len(self.cells[c].segments()) for c in new) - shared - len(old.segments())
            self.growth.append((kind, grown))

    def _split_horizontal(self, cid, h):
        cell = self._drop(cid)
        cs = cell.corners
        zx, zy = cell.top_right
        j = bisect.bisect_left(cs, True, key=lambda m: m[1] < h)
        a = self._new(zx, zy, cs[:j] + [(cs[j][0], h)], self.k)
        b = self._new(zx, h, cs[j:], self.k)
        self._note_growth("h", cell, a, b)

    def _split_vertical(self, cid, v):
        cell = self._drop(cid)
        cs = cell.corners
        zx, zy = cell.top_right
        j = bisect.bisect_left(cs, True, key=lambda m: m[0] > v)
        a = self._new(v, zy, cs[:j], self.k)
        b = self._new(zx, zy, [(v, cs[j - 1][1])] + cs[j:], self.k)
        self._note_growth("v", cell, a, b)

    def _split_sw(self, cid, px, py):
        cell = self._drop(cid)
        cs = cell.corners
        zx, zy = cell.top_right
        a = bisect.bisect_left(cs, True, key=lambda m: m[0] > px)
        b = bisect.bisect_left(cs, True, key=lambda m: m[1] < py)
        if not b < a:
            raise StaircaseInvariantError(f"point {(px, py)} not interior to its cell")
        inner = self._new(px, py, cs[b:a], self.k)
        rest = cs[:b] + [(cs[b][0], py), (px, cs[a - 1][1])] + cs[a:]
        outer = self._new(zx, zy, rest, self.k)
        self._note_growth("sw", cell, inner, outer)
        return outer

    # -- insertion ---------------------------------------------------------
    def insert(self, px, py):
        self.k += 1
        c = self.c
        start = self.top_cell
        left = self._walk(start, py, self._left_neighbor, c - 1)
        down = self._walk(start, px, self._lower_neighbor, c - 1)
        if self.debug:
            record = self._debug_before(px, py)
        for cid in left:
            self._split_horizontal(cid, py)
        for cid in down:
            self._split_vertical(cid, px)
        self.top_cell = self._split_sw(start, px, py)
        self.inserted.append((px, py))
        if self.debug:
            self._debug_after(record)

    # -- debug instrumentation ----------------------------------------------
    def _brute_depth(self, cell: Cell) -> int:
        zx, zy = cell.top_right
        return sum(1 for qx, qy in self.inserted if qx >= zx and qy >= zy)

    def _debug_before(self, px, py) -> IterationRecord:
        depths = {cid: self._brute_depth(cell) for cid, cell in self.cells.items()}
        zero = [cid for cid, d in depths.items() if d == 0]
        holder = [cid for cid, cell in self.cells.items() if cell.nec_contains_key(px, py)]
        start = self.top_cell
        left = [start] + self._walk(start, py, self._left_neighbor, None)
        down = [start] + self._walk(start, px, self._lower_neighbor, None)
        return IterationRecord(
            k=self.k,
            depth0_cells=len(zero),
            point_in_depth0=len(zero) == 1 and holder == zero,
            left_depths=[depths[cid] for cid in left],
            down_depths=[depths[cid] for cid in down],
            cells_before=len(self.cells),
            cells_after=0,
            edges_before=count_edges(self.cells.values()),
            edges_after=0,
        )

    def _debug_after(self, record: IterationRecord):
        for cell in self.cells.values():
            if not cell.is_staircase():
                raise StaircaseInvariantError(f"cell {cell.id} is not a staircase polygon")
        record.split_edge_growth = self.growth
        self.growth = []
        record.cells_after = len(self.cells)
        record.edges_after = count_edges(self.cells.values())
        self.trace.append(record)


def count_edges(cells) -> int:
    """Edges of the planar subdivision, splitting segments at T-junctions."""
    lines: dict = {}
    verts: dict = {}
    for cell in cells:
        for axis, at, lo, hi in cell.segments():
            lines.setdefault((axis, at), []).append((lo, hi))
            other = "v" if axis == "h" else "h"
            for end in (lo, hi):
                verts.setdefault((axis, at), set()).add(end)
                verts.setdefault((other, end), set()).add(at)
    total = 0
    for line, spans in lines.items():
        on_line = sorted(verts[line])
        spans.sort()
        lo, hi = spans[0]
        merged = []
        for a, b in spans[1:]:
            if a <= hi:
                hi = max(hi, b)
            else:
                merged.append((lo, hi))
                lo, hi = a, b
        merged.append((lo, hi))
        for a, b in merged:
            total += bisect.bisect_right(on_line, b) - bisect.bisect_left(on_line, a) - 1
    return total


class _FenwickSmallest:
    """Prefix structure keeping the ``c`` smallest ranks per node."""

    def __init__(self, size: int, c: int):
        self.size = size
        self.c = c
        self.tree = [[] for _ in range(size + 1)]

    def add(self, pos: int, rank: int):
        i = pos + 1
        while i <= self.size:
            node = self.tree[i]
            if len(node) < self.c or rank < node[-1]:
                bisect.insort(node, rank)
                if len(node) > self.c:
                    node.pop()
            i += i & -i

    def smallest(self, count: int) -> list:
        out: list = []
        i = count
        while i > 0:
            out.extend(self.tree[i])
            i -= i & -i
        out.sort()
        return out[: self.c]


def _fill_answers(cells: list[Cell], keys: list[KeyPoint], c: int):
    """Set each cell's c lowest-rank points dominating its top-right vertex.

    Within a quadrant L1 order equals insertion order, so this is the
    stored answer set.  Offline sweep over x with a Fenwick tree over y.
    """
    n = len(keys)
    ys = sorted(ky for _, ky in keys)
    by_x = sorted(range(n), key=lambda r: keys[r][0], reverse=True)
    fen = _FenwickSmallest(n, c)
    j = 0
    for cell in sorted(cells, key=lambda cl: cl.top_right[0], reverse=True):
        zx, zy = cell.top_right
        while j < n and keys[by_x[j]][0] >= zx:
            r = by_x[j]
            fen.add(n - 1 - bisect.bisect_left(ys, keys[r][1]), r)
            j += 1
        ranks = fen.smallest(n - bisect.bisect_left(ys, zy))
        cell.answer = tuple(ranks)
        cell.depth = sum(1 for r in ranks if r < cell.created)


class SlabLocator:
    """North-east-closure point location over a staircase subdivision.

    Every horizontal staircase edge is stored as the floor of the cell
    above it.  A segment tree over the x-slabs holds, per node, the floors
    spanning that node sorted by height; a query walks one root-to-leaf
    path and keeps the highest floor strictly below the query.  Strict
    comparisons on both axes place the query at ``(x - eps, y - eps)``.
    """

    def __init__(self, cells: Sequence[Cell]):
        floors = []
        xs = set()
        for cell in cells:
            zx = cell.top_right[0]
            cs = cell.corners
            for i, (mx, my) in enumerate(cs):
                right = cs[i + 1][0] if i + 1 < len(cs) else zx
                floors.append((my, mx, right, cell.id))
                xs.add(mx)
                xs.add(right)
        xs.discard(NEG)
        xs.discard(POS)
        self.xs = sorted(xs)
        leaves = len(self.xs) + 1
        size = 1
        while size < leaves:
            size *= 2
        self.size = size
        buckets: list = [[] for _ in range(2 * size)]
        xs_sorted = self.xs
        for fy, x0, x1, cid in floors:
            lo = 0 if x0 == NEG else bisect.bisect_left(xs_sorted, x0) + 1
            hi = leaves - 1 if x1 == POS else bisect.bisect_left(xs_sorted, x1)
            lo += size
            hi += size + 1
            while lo < hi:
                if lo & 1:
                    buckets[lo].append((fy, cid))
                    lo += 1
                if hi & 1:
                    hi -= 1
                    buckets[hi].append((fy, cid))
                lo >>= 1
                hi >>= 1
        # floor heights become integer ranks so the per-node searches
        # compare machine ints in flat arrays instead of key tuples
        self.yvals = sorted({f[0] for f in floors})
        rank = {v: r for r, v in enumerate(self.yvals)}
        self.ys = []
        self.ids = []
        for b in buckets:
            b.sort()
            self.ys.append(array("q", [rank[fy] for fy, _ in b]))
            self.ids.append(array("q", [cid for _, cid in b]))

    def locate_key(self, kx, ky) -> int:
        node = bisect.bisect_left(self.xs, kx) + self.size
        r = bisect.bisect_left(self.yvals, ky)
        best = -1
        best_id = -1
        ys = self.ys
        while node:
            row = ys[node]
            i = bisect.bisect_left(row, r)
            if i and row[i - 1] > best:
                best = row[i - 1]
                best_id = self.ids[node][i - 1]
            node >>= 1
        return best_id


class StaircaseIndex:
    """Built subdivision plus locator; immutable once constructed.

    ``members[r]`` is the point returned for insertion rank ``r``; the
    cone structures use it to hand back original points while the keys
    describe transformed ones.
    """

    def __init__(self, keys: Sequence[KeyPoint], members: Sequence[Point], c: int,
                 debug: bool = False):
        if c < 1:
            raise ValueError(f"c must be at least 1, got {c}")
        builder = _Builder(c, debug)
        for kx, ky in keys:
            builder.insert(kx, ky)
        self.c = c
        self.n = len(keys)
        self.members = list(members)
        self.cells = sorted(builder.cells.values(), key=lambda cl: cl.id)
        _fill_answers(self.cells, list(keys), c)
        self._by_id = {cell.id: cell for cell in self.cells}
        self.trace = builder.trace
        self.locator = SlabLocator(self.cells)

    def locate_key(self, kx, ky) -> Cell:
        return self._by_id[self.locator.locate_key(kx, ky)]

    def query_key(self, kx, ky) -> list[Point]:
        members = self.members
        return [members[r] for r in self.locate_key(kx, ky).answer]

    def locate(self, p: Point) -> Cell:
        return self.locate_key((p.x, -1), (p.y, -1))

    def closest_c(self, p: Point) -> list[Point]:
        return self.query_key((p.x, -1), (p.y, -1))

    def answer_points(self, cell: Cell) -> list[Point]:
        return [self.members[r] for r in cell.answer]

    def edge_count(self) -> int:
        return count_edges(self.cells)

    def cell_bound(self) -> int:
        return 1 + self.n * (2 * self.c - 1)

    def edge_bound(self) -> int:
        return 4 + 4 * self.n * (2 * self.c - 1)


def keyed_build(points: Sequence[Point], xs: Sequence, ys: Sequence, c: int,
                debug: bool = False) -> StaircaseIndex:
    """Build over transformed coordinates ``(xs[i], ys[i])`` of ``points[i]``.

    Ties in the transformed coordinates are broken by input position, so
    no general-position assumption is needed here.
    """
    order = sorted(range(len(points)), key=lambda i: (xs[i] + ys[i], i))
    keys = [((xs[i], i), (ys[i], i)) for i in order]
    return StaircaseIndex(keys, [points[i] for i in order], c, debug)


def build_staircase_index(points: Sequence[Point], c: int, *, debug: bool = False
                          ) -> StaircaseIndex:
    """Build the subdivision over ``points`` (general position, ``1 <= c <= n``).

    An empty point set is accepted and yields the single whole-plane cell.
    """
    n = len(points)
    if n and not 1 <= c <= n:
        raise ValueError(f"c must satisfy 1 <= c <= n={n}, got {c}")
    require_distinct_ids(points)
    require_general_position(points)
    return keyed_build(points, [p.x for p in points], [p.y for p in points], max(c, 1), debug)


def locate_nec(index: StaircaseIndex, p: Point) -> Cell:
    return index.locate(p)


def closest_c_query(index: StaircaseIndex, p: Point) -> list[Point]:
    return index.closest_c(p)
