"""``rangepair`` command line: generate, build, query, bench, dump-svg.

Exit status is 0 on success, 1 when ``query --verify`` finds a mismatch
and 2 on bad input.  ``RANGEPAIR_THREADS`` sets the worker count used to
answer a workload.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import random
import statistics
import sys
import time
import tracemalloc
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from fractions import Fraction

from . import oracle
from .closest_pair import build_rcp
from .cones import AnchoredSquareIndex, SparseReportIndex
from .formats import (
    KINDS,
    FormatError,
    PointSet,
    Query,
    RangeTooSmall,
    generate_points,
    generate_workload,
    read_points,
    read_workload,
    write_points,
    write_workload,
)
from .geometry import GeneralPositionError, Point, d_euclid_sq, require_general_position
from .min_weight import BruteClosestPair, build_rmw_from_cp, rcp_backend
from .rmw import build_rmw_baseline
from .staircase import build_staircase_index
from .svg import render_svg

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _num(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    return v


@contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as f:
            yield f


def _load_points(path) -> PointSet:
    with open(path) as f:
        return read_points(f)


def _threads() -> int:
    raw = os.environ.get("RANGEPAIR_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"RANGEPAIR_THREADS must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------- generate

def cmd_generate(args) -> int:
    ps = generate_points(args.n, args.range, args.seed, args.weighted)
    with _open_out(args.output) as f:
        write_points(f, ps)
    if args.workload:
        kinds = args.kinds.split(",") if args.kinds else list(KINDS)
        if not ps.weighted and "rmw" in kinds:
            kinds.remove("rmw")
        bad = [k for k in kinds if k not in KINDS]
        if bad:
            raise InputError(f"unknown query kinds: {', '.join(bad)}")
        qs = generate_workload(ps.points, args.range, args.queries, args.seed + 1, kinds)
        with open(args.workload, "w") as f:
            write_workload(f, qs)
    return EXIT_OK


# ---------------------------------------------------------------- build

def _build(structure, ps: PointSet, c: int, backend: str):
    pts = ps.points
    if structure == "staircase":
        return build_staircase_index(pts, min(c, max(len(pts), 1)))
    if structure == "rcp":
        require_general_position(pts)
        return build_rcp(pts)
    if structure == "rmw-baseline":
        return build_rmw_baseline(ps.weighted_points())
    if structure == "rmw-from-cp":
        require_general_position(pts)
        cp = BruteClosestPair if backend == "brute" else rcp_backend
        return build_rmw_from_cp(ps.weighted_points(), cp)
    raise InputError(f"unknown structure {structure!r}")


def cmd_build(args) -> int:
    ps = _load_points(args.points)
    if args.memory:
        tracemalloc.start()
    t0 = time.perf_counter()
    try:
        index = _build(args.structure, ps, args.c, args.backend)
        elapsed = time.perf_counter() - t0
        peak = tracemalloc.get_traced_memory()[1] if args.memory else None
    finally:
        if args.memory:
            tracemalloc.stop()
    report = {"structure": args.structure, "n": len(ps.points), "build_ms": round(elapsed * 1000, 3)}
    if args.memory:
        # tracing slows the build down, so build_ms is inflated in this mode
        report["memory_peak_bytes"] = peak
    if args.structure == "staircase":
        cells, edges = len(index.cells), index.edge_count()
        report.update(c=index.c, cells=cells, edges=edges, cell_bound=index.cell_bound(),
                      edge_bound=index.edge_bound(),
                      bounds_ok=cells <= index.cell_bound() and edges <= index.edge_bound())
    elif args.structure == "rmw-from-cp":
        report.update(backend=args.backend,
                      doubled_points=0 if index.doubled is None else 3 * index.doubled.n)
    with _open_out(args.output) as f:
        f.write(json.dumps(report, sort_keys=True) + "\n")
    return EXIT_OK if report.get("bounds_ok", True) else EXIT_MISMATCH


# ---------------------------------------------------------------- query

class Engine:
    """Builds each index a workload needs once, then answers queries."""

    def __init__(self, ps: PointSet, queries: list[Query], rmw_backend: str, cp_backend: str):
        self.ps = ps
        pts = ps.points
        n = len(pts)
        self.points = pts
        kinds = {q.kind for q in queries}
        if kinds - {"closest_c", "rmw"}:
            require_general_position(pts)
        if "rmw" in kinds and not ps.weighted:
            raise InputError("rmw queries need a weighted point file")
        self.staircase = None
        cs = [q.c for q in queries if q.kind == "closest_c"]
        if cs and n:
            self.staircase = build_staircase_index(pts, min(max(cs), n))
        self.anchored = {}
        for q in queries:
            if q.kind == "anchored_square" and (q.c, q.orientation) not in self.anchored:
                self.anchored[q.c, q.orientation] = AnchoredSquareIndex(pts, q.c, q.orientation)
        self.sparse = {}
        for q in queries:
            if q.kind == "sparse_report" and q.c not in self.sparse:
                self.sparse[q.c] = SparseReportIndex(pts, q.c)
        self.rcp = build_rcp(pts) if "rcp" in kinds else None
        self.rmw = None
        self.weighted = None
        if "rmw" in kinds:
            self.weighted = ps.weighted_points()
            if rmw_backend == "baseline":
                self.rmw = build_rmw_baseline(self.weighted)
            else:
                cp = BruteClosestPair if cp_backend == "brute" else rcp_backend
                self.rmw = build_rmw_from_cp(self.weighted, cp)

    def answer(self, q: Query):
        if q.kind == "closest_c":
            if self.staircase is None:
                return []
            return self.staircase.closest_c(q.point)[: q.c]
        if q.kind == "anchored_square":
            return self.anchored[q.c, q.orientation].query(q.point)
        if q.kind == "sparse_report":
            return self.sparse[q.c].query(q.square)
        if q.kind == "rcp":
            return self.rcp.query(q.square)
        return self.rmw.query(q.square)

    def check(self, q: Query, got) -> bool:
        pts = self.points
        if q.kind == "closest_c":
            return [p.id for p in got] == [p.id for p in oracle.brute_closest_c(pts, q.point, q.c)]
        if q.kind == "anchored_square":
            want = oracle.brute_anchored_square(pts, q.point, q.c, q.orientation)
            if got is None or want is None:
                return got is None and want is None
            return got.side == want.side and {p.id for p in got.points} == {p.id for p in want.points}
        if q.kind == "sparse_report":
            want = oracle.brute_range_report(pts, q.square, q.c)
            if got is None or want is None:
                return got is None and want is None
            return sorted(p.id for p in got) == sorted(p.id for p in want)
        if q.kind == "rcp":
            want = oracle.brute_closest_pair_in_range(pts, q.square)
            if got.pair is None or want.pair is None:
                return got.pair is None and want.pair is None
            return got.distance_sq == want.distance_sq and d_euclid_sq(*got.pair) == got.distance_sq
        want = oracle.brute_min_weight_in_range(self.weighted, q.square)
        if got is None or want is None:
            return got is None and want is None
        return got.weight == want.weight

    @staticmethod
    def encode(q: Query, got) -> dict:
        if q.kind in ("closest_c", "sparse_report"):
            if got is None:
                return {"more_than_c": True}
            return {"ids": [p.id for p in got]}
        if q.kind == "anchored_square":
            if got is None:
                return {"insufficient": True}
            return {"side": _num(got.side), "ids": [p.id for p in got.points],
                    "defining": got.defining_point.id}
        if q.kind == "rcp":
            if got.pair is None:
                return {"pair": None}
            return {"distance_sq": _num(got.distance_sq), "pair": [p.id for p in got.pair]}
        if got is None:
            return {"empty": True}
        return {"id": got.id, "weight": _num(got.weight)}


def cmd_query(args) -> int:
    ps = _load_points(args.points)
    with open(args.workload) as f:
        queries = read_workload(f)
    engine = Engine(ps, queries, args.rmw_backend, args.cp_backend)

    def run(q):
        t0 = time.perf_counter_ns()
        got = engine.answer(q)
        dt = time.perf_counter_ns() - t0
        ok = engine.check(q, got) if args.verify else None
        return got, dt, ok

    threads = _threads()
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(run, queries))
    else:
        results = [run(q) for q in queries]

    stats: dict = {}
    mismatches = 0
    with _open_out(args.output) as out:
        for i, (q, (got, dt, ok)) in enumerate(zip(queries, results)):
            rec = {"i": i, "kind": q.kind, "answer": Engine.encode(q, got)}
            if args.verify:
                rec["ok"] = ok
                mismatches += not ok
            out.write(json.dumps(rec, sort_keys=True) + "\n")
            s = stats.setdefault(q.kind, [0, 0, 0])
            s[0] += 1
            s[1] += 0 if ok in (None, True) else 1
            s[2] += dt
    summary = open(args.summary, "w", newline="") if args.summary else None
    try:
        w = csv.writer(summary or sys.stderr)
        w.writerow(["kind", "queries", "mismatches", "mean_query_us"])
        for kind in KINDS:
            if kind in stats:
                cnt, bad, total = stats[kind]
                w.writerow([kind, cnt, bad, f"{total / cnt / 1000:.3f}"])
    finally:
        if summary:
            summary.close()
    return EXIT_MISMATCH if mismatches else EXIT_OK


# ---------------------------------------------------------------- bench

def bench_rows(sizes, c: int, queries: int, seed: int, repeat: int = 5):
    for n in sizes:
        ps = generate_points(n, max(16 * n, 1024), seed)
        t0 = time.perf_counter()
        index = build_staircase_index(ps.points, min(c, max(n, 1)))
        build_ms = (time.perf_counter() - t0) * 1000
        rng = random.Random(seed + n)
        span = max(16 * n, 1024)
        probes = [Point(rng.randrange(span), rng.randrange(span)) for _ in range(queries)]
        for p in probes[:50]:
            index.closest_c(p)
        # several passes; the median pass mean damps scheduler noise
        times, pass_means = [], []
        for _ in range(repeat if probes else 0):
            batch = []
            for p in probes:
                t = time.perf_counter_ns()
                index.closest_c(p)
                batch.append((time.perf_counter_ns() - t) / 1000)
            pass_means.append(statistics.fmean(batch))
            times += batch
        times.sort()
        p99 = times[min(len(times) - 1, int(0.99 * len(times)))] if times else 0.0
        yield {"n": n, "build_ms": round(build_ms, 3),
               "mean_query_us": round(statistics.median(pass_means), 3) if pass_means else 0.0,
               "p99_query_us": round(p99, 3), "cells": len(index.cells), "edges": index.edge_count()}


BENCH_COLUMNS = ["n", "build_ms", "mean_query_us", "p99_query_us", "cells", "edges"]


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
    except ValueError:
        raise InputError(f"--sizes must be comma separated integers, got {args.sizes!r}") from None
    with _open_out(args.output) as f:
        w = csv.DictWriter(f, fieldnames=BENCH_COLUMNS)
        w.writeheader()
        for row in bench_rows(sizes, args.c, args.queries, args.seed, args.repeat):
            w.writerow(row)
            f.flush()
    return EXIT_OK


# ---------------------------------------------------------------- dump-svg

def cmd_dump_svg(args) -> int:
    ps = _load_points(args.points)
    n = len(ps.points)
    index = build_staircase_index(ps.points, min(args.c, max(n, 1)))
    with _open_out(args.output) as f:
        f.write(render_svg(index, ps.points))
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rangepair", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="random point set in general position")
    g.add_argument("-n", type=int, required=True)
    g.add_argument("--range", type=int, default=10**6, help="coordinates are drawn from [0, RANGE)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--weighted", action="store_true")
    g.add_argument("-o", "--output", default="-")
    g.add_argument("--workload", help="also write a random workload to this file")
    g.add_argument("--queries", type=int, default=1000)
    g.add_argument("--kinds", help=f"comma separated subset of {','.join(KINDS)}")
    g.set_defaults(func=cmd_generate)

    b = sub.add_parser("build", help="build an index and report sizes and timing")
    b.add_argument("points")
    b.add_argument("--structure", choices=["staircase", "rcp", "rmw-baseline", "rmw-from-cp"],
                   default="staircase")
    b.add_argument("--c", type=int, default=3)
    b.add_argument("--backend", choices=["brute", "rcp"], default="rcp",
                   help="closest-pair backend for rmw-from-cp")
    b.add_argument("--memory", action="store_true", help="also report peak traced allocation")
    b.add_argument("-o", "--output", default="-")
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="answer a workload, optionally checking every answer")
    q.add_argument("points")
    q.add_argument("workload")
    q.add_argument("--verify", action="store_true")
    q.add_argument("--rmw-backend", choices=["baseline", "from-cp"], default="baseline")
    q.add_argument("--cp-backend", choices=["brute", "rcp"], default="rcp")
    q.add_argument("-o", "--output", default="-")
    q.add_argument("--summary", help="CSV summary path (default: stderr)")
    q.set_defaults(func=cmd_query)

    be = sub.add_parser("bench", help="closest_c build and query timing over a size sweep")
    be.add_argument("--sizes", default="1024,4096,16384,65536")
    be.add_argument("--c", type=int, default=3)
    be.add_argument("--queries", type=int, default=1000)
    be.add_argument("--repeat", type=int, default=5, help="timing passes per size")
    be.add_argument("--seed", type=int, default=0)
    be.add_argument("-o", "--output", default="-")
    be.set_defaults(func=cmd_bench)

    d = sub.add_parser("dump-svg", help="draw the staircase subdivision with cell depths")
    d.add_argument("points")
    d.add_argument("--c", type=int, default=2)
    d.add_argument("-o", "--output", default="-")
    d.set_defaults(func=cmd_dump_svg)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FormatError, GeneralPositionError, RangeTooSmall, OSError, ValueError) as e:
        print(f"rangepair {args.command}: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
