"""3D grid drawings: one column per track, columns on a convex curve.

Track j becomes the vertical grid column x = j, y = j*j; the strictly convex
column placement makes the xy-projection of any edge a chord that passes
strictly above every intermediate column, so edges can only meet other edges,
never intermediate vertices. Vertices get exact integer heights greedily:
chords over the same column pair must keep their z-order, chords over
interleaving column pairs exclude at most one height each, and heights are
unique per column. A full independent verifier re-checks the finished drawing
with exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from ._fallback import point_on_open_segment, segment_pair_kind, shared_endpoint_overlap
from .errors import DrawingError, GraphError, InvariantViolation
from .graph import Edge, Graph
from .tracks import TrackAssignment, same_track_edges

Point3 = tuple[int, int, int]
Violation = tuple


@dataclass(frozen=True)
class GridDrawing3D:
    """Integer positions indexed by vertex; column c sits at x=c, y=c*c."""

    positions: tuple[Point3, ...]

    @cached_property
    def column_of(self) -> tuple[int, ...]:
        return tuple(p[0] for p in self.positions)

    def __len__(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class VolumeStats:
    x: int
    y: int
    z: int

    @property
    def volume(self) -> int:
        return self.x * self.y * self.z


def volume_stats(d: GridDrawing3D) -> VolumeStats:
    """Bounding-box extents (grid points per axis) and their product."""
    if not d.positions:
        return VolumeStats(0, 0, 0)
    xs, ys, zs = zip(*d.positions)
    return VolumeStats(
        max(xs) - min(xs) + 1,
        max(ys) - min(ys) + 1,
        max(zs) - min(zs) + 1,
    )


def draw(t: TrackAssignment, g: Graph, z_max: int | None = None) -> GridDrawing3D:
    """Drawing of g with one column per track of t, verified before return.

    Vertices are placed column by column in track order; each vertex takes the
    smallest height that is above its predecessor on the same column and
    compatible with every edge to an already-placed neighbour. Keeping heights
    monotone in track order means that on a layout free of track crossings the
    same-column-pair constraints can never contradict each other, so the only
    failure mode is the height budget (default 64n, at least 64). Layouts with
    track crossings are still accepted and drawn when the constraints happen
    to be satisfiable; otherwise DrawingError carries an obstruction record.
    """
    n = g.vertex_count
    if sorted(t.flat_order()) != list(range(n)):
        raise GraphError("track assignment does not cover the graph's vertices exactly")
    bad = same_track_edges(t, list(g.edges))
    if bad:
        raise GraphError(f"same-track edges cannot be drawn on distinct columns: {bad[:3]}")
    tcount = t.track_count
    if z_max is None:
        z_max = max(64 * n, 64)
    if z_max * max(tcount, 2) ** 3 >= 2**62:
        raise DrawingError("height budget times column span exceeds the exact arithmetic envelope")

    col_of = t.track_index_of
    m = g.edge_count

    # per-column entry store for the chord-interleaving probe: every placed
    # edge registers at both endpoint columns
    counts = [0] * tcount
    for u, v in g.edges:
        counts[col_of[u]] += 1
        counts[col_of[v]] += 1
    col_ptr = np.zeros(tcount, dtype=np.int64)
    acc = 0
    for c in range(tcount):
        col_ptr[c] = acc
        acc += counts[c]
    col_fill = col_ptr.copy()
    inc_other = np.zeros(max(acc, 1), dtype=np.int64)
    inc_zc = np.zeros(max(acc, 1), dtype=np.int64)
    inc_zd = np.zeros(max(acc, 1), dtype=np.int64)
    ent_edge: list[Edge | None] = [None] * max(acc, 1)

    z_of = [0] * n
    placed = [False] * n
    ceiling = [0] * tcount  # height of the last vertex placed on each column
    # same column pair: chords project onto the same xy segment, so their
    # z-order must match at both ends; (z at b, z at a, edge) per pair
    buckets: dict[tuple[int, int], list[tuple[int, int, Edge]]] = {}
    adj = g.adjacency

    for a in range(tcount):
        for u in t.sequences[a]:
            nbrs = [w for w in adj[u] if placed[w]]
            lower, upper = ceiling[a] + 1, z_max
            lower_edge: Edge | None = None
            upper_edge: Edge | None = None
            for w in nbrs:
                b = col_of[w]
                zb = z_of[w]
                for ze_b, ze_a, e in buckets.get((b, a), ()):
                    if zb > ze_b and ze_a + 1 > lower:
                        lower, lower_edge = ze_a + 1, e
                    elif zb < ze_b and ze_a - 1 < upper:
                        upper, upper_edge = ze_a - 1, e
            z = lower
            while True:
                if z > upper:
                    raise DrawingError(
                        f"no height left for vertex {u} on column {a}",
                        obstruction={
                            "vertex": u,
                            "column": a,
                            "range": (lower, upper),
                            "edges": [e for e in (lower_edge, upper_edge) if e is not None],
                        },
                    )
                if z > z_max:
                    raise DrawingError(
                        f"height budget {z_max} exhausted at vertex {u} on column {a}",
                        obstruction={"vertex": u, "column": a, "z_max": z_max},
                    )
                hit = -1
                for w in nbrs:
                    b = col_of[w]
                    if a - b >= 2:
                        hit = _kernels.interleave_conflict(
                            b, a, z_of[w], z, inc_other, inc_zc, inc_zd, col_ptr, col_fill
                        )
                        if hit >= 0:
                            break
                if hit >= 0:
                    z += 1
                    continue
                break
            z_of[u] = z
            placed[u] = True
            ceiling[a] = z
            for w in nbrs:
                b = col_of[w]
                fb = int(col_fill[b])
                inc_other[fb], inc_zc[fb], inc_zd[fb] = a, z_of[w], z
                ent_edge[fb] = (w, u)
                col_fill[b] = fb + 1
                fa = int(col_fill[a])
                inc_other[fa], inc_zc[fa], inc_zd[fa] = b, z, z_of[w]
                ent_edge[fa] = (w, u)
                col_fill[a] = fa + 1
                buckets.setdefault((b, a), []).append((z_of[w], z, (w, u)))

    d = GridDrawing3D(tuple((col_of[v], col_of[v] ** 2, z_of[v]) for v in range(n)))
    violations = verify_drawing(g, d)
    if violations:
        raise InvariantViolation(f"drawing failed verification: {violations[:3]}")
    return d


def verify_drawing(g: Graph, d: GridDrawing3D) -> list[Violation]:
    """Exhaustive exact check of a drawing against its graph.

    Returns violation tuples, empty when the drawing is clean:
      ("duplicate_position", v, w)          two vertices share a grid point
      ("vertex_on_edge", v, edge_index)     v strictly inside a segment
      ("crossing", i, j)                    edge interiors cross at a point
      ("overlap", i, j)                     collinear overlap of positive length

    Any integer positions are accepted, not just column layouts; coordinates
    beyond the fast-path envelope fall back to arbitrary-precision arithmetic.
    """
    n = g.vertex_count
    if len(d.positions) != n:
        raise GraphError(f"drawing has {len(d.positions)} positions for {n} vertices")
    out: list[Violation] = []
    seen: dict[Point3, int] = {}
    for v, p in enumerate(d.positions):
        if p in seen:
            out.append(("duplicate_position", seen[p], v))
        else:
            seen[p] = v
    edges = list(g.edges)
    if not edges:
        return out
    flat = max((abs(c) for p in d.positions for c in p), default=0)
    if flat <= _kernels.ENVELOPE:
        coords = np.array(d.positions, dtype=np.int64)
        out.extend(_kernels.drawing_conflicts(coords, np.array(edges, dtype=np.int64)))
    else:
        out.extend(_bigint_conflicts(d.positions, edges))
    return out


def _bigint_conflicts(pos: tuple[Point3, ...], edges: list[Edge]) -> list[Violation]:
    """Arbitrary-precision twin of the kernel conflict scan, same ordering."""
    out: list[Violation] = []
    m = len(edges)
    seg = [(pos[u], pos[v]) for u, v in edges]
    box = [tuple(zip(map(min, *s), map(max, *s))) for s in seg]

    def in_box(p: Point3, bx) -> bool:
        return all(lo <= c <= hi for c, (lo, hi) in zip(p, bx))

    for ei, (u, v) in enumerate(edges):
        a, b = seg[ei]
        for p in range(len(pos)):
            if p == u or p == v or not in_box(pos[p], box[ei]):
                continue
            if point_on_open_segment(pos[p], a, b):
                out.append(("vertex_on_edge", p, ei))
    for i in range(m - 1):
        ui, vi = edges[i]
        a, b = seg[i]
        for j in range(i + 1, m):
            if any(bl > ih or bh < il for (bl, bh), (il, ih) in zip(box[j], box[i])):
                continue
            x, y = edges[j]
            if x in (ui, vi) or y in (ui, vi):
                w = x if x in (ui, vi) else y
                p = vi if w == ui else ui
                q = y if w == x else x
                if shared_endpoint_overlap(pos[w], pos[p], pos[q]):
                    out.append(("overlap", i, j))
                continue
            kind = segment_pair_kind(a, b, seg[j][0], seg[j][1])
            if kind is not None:
                out.append((kind, i, j))
    return out
