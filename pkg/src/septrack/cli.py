"""Command line interface.

Verbs: generate, layout, verify, draw, experiment, render. Every verb exits 0
only when its validators pass; bad input or failed verification exits 1 with
an ``error:`` line on stderr, and usage errors exit 2.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

from . import documents as docs
from ._kernels import backend_name
from .drawing import draw, verify_drawing, volume_stats
from .errors import SeptrackError
from .generators import FAMILY_ARITY, SEEDED_FAMILIES, GeneratorSpec, generate
from .pipeline import run_pipeline


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 1


def _report_lines(rep) -> list[str]:
    return [
        f"n={rep.n} ell={rep.ell} backend={backend_name()}",
        f"separator tree depth {rep.tree_depth} (bound {rep.depth_bound})",
        f"tracks {rep.track_count} (bound {rep.track_bound})",
        f"queues {rep.queue_count} (bound {rep.queue_bound})",
    ]


def _cmd_generate(args) -> int:
    spec = GeneratorSpec(args.family, tuple(args.args), seed=args.seed)
    g, rot = generate(spec)
    docs.save_graph(args.out, g, rot, label=spec.label())
    print(f"{spec.label()}: {g.vertex_count} vertices, {g.edge_count} edges -> {args.out}")
    return 0


def _cmd_layout(args) -> int:
    g, rot, label = docs.load_graph(args.graph)
    t0 = time.perf_counter()
    res = run_pipeline(g, rot, ell=args.ell)
    dt = time.perf_counter() - t0
    if args.out:
        docs.save_layout(args.out, res)
    for line in _report_lines(res.report):
        print(line)
    print(f"layout time {dt * 1000:.1f} ms" + (f" -> {args.out}" if args.out else ""))
    return 0


def _cmd_verify(args) -> int:
    failures = 0

    def check(name: str, problems: list) -> None:
        nonlocal failures
        if problems:
            failures += 1
            print(f"FAIL: {name}: {problems[:3]}")
        else:
            print(f"ok: {name}")

    g, rot, _ = docs.load_graph(args.graph)
    print(f"ok: graph document ({g.vertex_count} vertices, {g.edge_count} edges)")
    if args.layout:
        final, queues, septree, layering, report = docs.load_layout(
            args.layout, g, trust=args.trust
        )
        print("ok: layout document structure" + (" (trusted)" if args.trust else " and subgraph checks"))
        if not args.trust:
            check("layout recomputation", docs.check_layout(g, rot, final, queues, septree, layering, report))
    if args.drawing:
        d = docs.load_drawing(args.drawing, g if not args.trust else None, trust=args.trust)
        if args.trust:
            print("ok: drawing document structure (trusted)")
        else:
            check("drawing geometry", verify_drawing(g, d))
    if failures:
        print(f"{failures} verification failure(s)")
        return 1
    print("all checks passed")
    return 0


def _cmd_draw(args) -> int:
    g, _, _ = docs.load_graph(args.graph)
    final, _, _, _, _ = docs.load_layout(args.layout, g, trust=args.trust)
    d = draw(final, g, z_max=args.z_max)
    docs.save_drawing(args.out, d)
    vs = volume_stats(d)
    print(f"drawing {vs.x} x {vs.y} x {vs.z}, volume {vs.volume} -> {args.out}")
    return 0


def _grid_shape(n: int) -> tuple[int, int]:
    best = 1
    for r in range(1, int(n**0.5) + 1):
        if n % r == 0:
            best = r
    return best, n // best


def _cmd_experiment(args) -> int:
    rows = []
    for family in args.families:
        if family not in FAMILY_ARITY:
            return _fail(f"unknown family {family!r}; known: {sorted(FAMILY_ARITY)}")
        seeds = args.seeds if family in SEEDED_FAMILIES else [args.seeds[0]]
        for n in args.sizes:
            if FAMILY_ARITY[family] == 2:
                a, b = _grid_shape(n)
                if a < 2 or b < 3:
                    return _fail(f"size {n} does not factor into a {family} shape")
                fam_args: tuple[int, ...] = (a, b)
            else:
                fam_args = (n,)
            for seed in seeds:
                spec = GeneratorSpec(family, fam_args, seed=seed)
                g, rot = generate(spec)
                t0 = time.perf_counter()
                res = run_pipeline(g, rot, ell=args.ell)
                d = res.drawing()
                dt = time.perf_counter() - t0
                vs = volume_stats(d)
                rep = res.report
                rows.append(
                    {
                        "family": family,
                        "seed": seed,
                        "n": rep.n,
                        "tree_depth": rep.tree_depth,
                        "depth_bound": rep.depth_bound,
                        "tracks": rep.track_count,
                        "track_bound": rep.track_bound,
                        "queues": rep.queue_count,
                        "x": vs.x,
                        "y": vs.y,
                        "z": vs.z,
                        "volume": vs.volume,
                        "wall_time_ms": round(dt * 1000, 2),
                    }
                )
                print(f"{spec.label()}: tracks={rep.track_count} queues={rep.queue_count} volume={vs.volume} ({dt * 1000:.0f} ms)")
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="", encoding="utf-8")
    try:
        writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
            print(f"{len(rows)} rows -> {args.out}")
    return 0


def _cmd_render(args) -> int:
    g, _, _ = docs.load_graph(args.graph)
    if (args.layout is None) == (args.drawing is None):
        return _fail("render needs exactly one of --layout or --drawing")
    if args.layout:
        final, _, _, _, _ = docs.load_layout(args.layout, g, trust=args.trust)
        docs.export_track_svg(final, g, args.out)
        print(f"track layout svg -> {args.out}")
    else:
        d = docs.load_drawing(args.drawing, g if not args.trust else None, trust=args.trust)
        if args.format == "json":
            docs.save_drawing(args.out, d)
        else:
            docs.export_drawing_obj(d, g, args.out)
        print(f"drawing {args.format} -> {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="septrack",
        description="Track, queue, and 3D grid layouts of planar graphs via layered separators.",
    )
    sub = p.add_subparsers(dest="verb", required=True)

    gen = sub.add_parser("generate", help="write a graph document for a named family")
    gen.add_argument("family", choices=sorted(FAMILY_ARITY))
    gen.add_argument("args", nargs="+", type=int, help="family size arguments")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=_cmd_generate)

    lay = sub.add_parser("layout", help="compute the track and queue layout of a graph")
    lay.add_argument("--graph", required=True)
    lay.add_argument("--ell", type=int, default=2)
    lay.add_argument("--out")
    lay.set_defaults(func=_cmd_layout)

    ver = sub.add_parser("verify", help="re-check stored documents against each other")
    ver.add_argument("--graph", required=True)
    ver.add_argument("--layout")
    ver.add_argument("--drawing")
    ver.add_argument("--trust", action="store_true", help="structural parsing only")
    ver.set_defaults(func=_cmd_verify)

    drw = sub.add_parser("draw", help="compute a 3D grid drawing from a stored layout")
    drw.add_argument("--graph", required=True)
    drw.add_argument("--layout", required=True)
    drw.add_argument("--z-max", type=int, default=None)
    drw.add_argument("--trust", action="store_true")
    drw.add_argument("--out", required=True)
    drw.set_defaults(func=_cmd_draw)

    exp = sub.add_parser("experiment", help="sweep families and sizes, write a CSV")
    exp.add_argument("--families", nargs="+", default=sorted(FAMILY_ARITY))
    exp.add_argument("--sizes", nargs="+", type=int, default=[10, 50, 100, 500, 1000])
    exp.add_argument("--seeds", nargs="+", type=int, default=[0, 1, 2])
    exp.add_argument("--ell", type=int, default=2)
    exp.add_argument("--out", default="-")
    exp.set_defaults(func=_cmd_experiment)

    ren = sub.add_parser("render", help="export a layout as SVG or a drawing as OBJ/JSON")
    ren.add_argument("--graph", required=True)
    ren.add_argument("--layout")
    ren.add_argument("--drawing")
    ren.add_argument("--format", choices=["svg", "obj", "json"], default=None)
    ren.add_argument("--trust", action="store_true")
    ren.add_argument("--out", required=True)
    ren.set_defaults(func=_cmd_render)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "format", None) is None and args.verb == "render":
        args.format = "svg" if args.layout else "obj"
    try:
        return args.func(args)
    except SeptrackError as exc:
        return _fail(f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
