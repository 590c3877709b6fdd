"""Compare the compiled kernels against the NumPy fallback.

Runs each of the three kernels on identical, realistically shaped inputs
under both backends and prints best-of-N wall times plus the speedup.

    python benchmarks/bench_backends.py [--repeats 5] [--scale 1.0]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from septrack import GeneratorSpec, draw, generate, run_pipeline
from septrack._kernels import get_impl


def best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cycle_scan_inputs(n: int):
    """Candidate scan shaped like one decomposition level of an n-vertex run."""
    rng = random.Random(7)
    nfaces, ncand, nvert = 2 * n, n, n
    pref = np.cumsum([0] + [rng.randint(0, 1) for _ in range(nfaces)])
    pref = pref.astype(np.int64)
    lo = np.array([rng.randint(0, nfaces - 1) for _ in range(ncand)], np.int64)
    hi = np.minimum(lo + rng.randint(1, nfaces), nfaces - 1).astype(np.int64)
    enc_cand = np.array([rng.randrange(ncand) for _ in range(2 * ncand)], np.int64)
    enc_vert = np.array([rng.randrange(nvert) for _ in range(2 * ncand)], np.int64)
    all_cand = enc_cand.copy()
    all_vert = enc_vert[::-1].copy()
    weights = np.array([rng.randint(0, 1) for _ in range(nvert)], np.int64)
    return pref, lo, hi, enc_cand, enc_vert, all_cand, all_vert, weights, ncand


def drawing_inputs(n: int):
    """A real pipeline drawing of a stacked triangulation on n vertices."""
    g, rot = generate(GeneratorSpec("stacked_triangulation", (n,)))
    res = run_pipeline(g, rot)
    d = draw(res.final, g)
    coords = np.array(d.positions, dtype=np.int64)
    edges = np.array(g.edges, dtype=np.int64)
    return coords, edges


def interleave_inputs(entries: int, ncols: int):
    rng = random.Random(11)
    per_col = [[] for _ in range(ncols)]
    for _ in range(entries):
        c = rng.randrange(ncols)
        per_col[c].append((rng.randrange(ncols), rng.randint(1, 400),
                           rng.randint(1, 400)))
    counts = [len(x) for x in per_col]
    col_ptr = np.cumsum([0] + counts[:-1]).astype(np.int64)
    col_fill = (col_ptr + np.array(counts, np.int64)).astype(np.int64)
    flat = [e for col in per_col for e in col]
    inc_other = np.array([e[0] for e in flat] or [0], np.int64)
    inc_zc = np.array([e[1] for e in flat] or [0], np.int64)
    inc_zd = np.array([e[2] for e in flat] or [0], np.int64)
    probes = [(rng.randrange(ncols - 2), rng.randint(1, 400), rng.randint(1, 400))
              for _ in range(500)]
    probes = [(b, rng.randint(b + 2, ncols - 1), zu, zv) for b, zu, zv in probes]
    return probes, (inc_other, inc_zc, inc_zd, col_ptr, col_fill)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--scale", type=float, default=1.0,
                    help="multiply all workload sizes")
    args = ap.parse_args()

    try:
        compiled = get_impl("compiled")
    except ImportError:
        print("compiled extension not available; nothing to compare")
        return 1
    pure = get_impl("pure")

    s = args.scale
    scan_args = cycle_scan_inputs(int(4000 * s))
    coords, edges = drawing_inputs(max(int(700 * s), 50))
    probes, tables = interleave_inputs(int(3000 * s), 60)

    def run_scan(impl):
        return lambda: impl.cycle_scan(*scan_args)

    def run_conflicts(impl):
        return lambda: impl.drawing_conflicts(coords, edges)

    def run_interleave(impl):
        def go():
            for b, a, zu, zv in probes:
                impl.interleave_conflict(b, a, zu, zv, *tables)
        return go

    rows = [
        ("cycle_scan", run_scan),
        (f"drawing_conflicts ({len(edges)} edges)", run_conflicts),
        (f"interleave_conflict ({len(probes)} probes)", run_interleave),
    ]
    print(f"{'kernel':<38} {'pure':>10} {'compiled':>10} {'speedup':>9}")
    for name, make in rows:
        tp = best_of(make(pure), args.repeats)
        tc = best_of(make(compiled), args.repeats)
        print(f"{name:<38} {tp * 1e3:>8.2f}ms {tc * 1e3:>8.2f}ms "
              f"{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
