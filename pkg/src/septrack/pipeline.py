"""End-to-end layout pipeline: triangulate, separate, track, wrap, queue.

The pipeline augments the input to a biconnected triangulation (the layout is
computed there, where the structural guarantees hold), then restricts every
product back to the original graph: added edges influence layering, separator
choice, and track order, but never appear in the queue layout or drawing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .drawing import GridDrawing3D, draw
from .embedding import RotationSystem, Triangulation, triangulate, biconnect
from .errors import EmbeddingError, GraphError, InvariantViolation
from .graph import Edge, Graph, Layering, bfs_layering
from .queues import QueueLayout, tracks_to_queues
from .separators import (
    BfsTree,
    SeparatorNode,
    SeparatorTree,
    bfs_tree,
    build_separator_tree,
    ceil_log_three_halves,
)
from .tracks import (
    TrackAssignment,
    TreeTrackLayout,
    assign_tracks,
    compose_final,
    extract_depth_layout,
    tree_track_layout,
    verify_no_xcrossing,
    wrap,
)


@dataclass(frozen=True)
class BoundReport:
    """Measured quantities of a finished layout next to their guarantees."""

    n: int
    ell: int
    log_ceiling: int  # smallest h with (3/2)^h >= n
    tree_depth: int
    depth_bound: int  # log_ceiling + 1
    track_count: int
    track_bound: int  # 3 * ell * (log_ceiling + 1)
    queue_count: int
    queue_bound: int  # track_count - 1 (0 when the layout has a single track)

    @property
    def ok(self) -> bool:
        return (
            self.tree_depth <= self.depth_bound
            and self.track_count <= self.track_bound
            and self.queue_count <= self.queue_bound
        ) or (self.queue_count == 0 and self.track_count <= self.track_bound)


@dataclass(frozen=True)
class PipelineResult:
    graph: Graph
    triangulation: Triangulation | None  # None for n <= 2
    added_edges: tuple[Edge, ...]
    layering: Layering
    tree: BfsTree | None
    septree: SeparatorTree
    intermediate: TrackAssignment  # keys (depth, layer, k)
    per_depth: dict[int, TrackAssignment]  # wrapped depth layouts, keys (layer mod 3, k)
    final: TrackAssignment  # keys (depth, layer mod 3, k)
    queues: QueueLayout
    report: BoundReport

    @cached_property
    def layout_edges(self) -> list[Edge]:
        """Edges the layout guarantees were computed against."""
        if self.triangulation is None:
            return list(self.graph.edges)
        return list(self.triangulation.graph.edges)

    def drawing(self, z_max: int | None = None) -> GridDrawing3D:
        return draw(self.final, self.graph, z_max=z_max)


def _leaf_tree(n: int, ell: int) -> SeparatorTree:
    node = SeparatorNode(
        index=0,
        depth=1,
        parent=-1,
        children=(),
        vertices=frozenset(range(n)),
        component=frozenset(range(n)),
        is_leaf=True,
    )
    return SeparatorTree(nodes=(node,), node_of_vertex=(0,) * n, ell=ell)


def run_pipeline(g: Graph, rot: RotationSystem | None = None, ell: int = 2) -> PipelineResult:
    """Compute the full track and queue layout of a connected planar graph.

    ``rot`` must be a planar rotation system of g whenever n >= 3 (no
    embedding is computed here). Augmentation edges are returned in
    ``added_edges``; the queue layout and any drawing use only g's own edges.
    Raises DisconnectedGraphError, EmbeddingError, or GraphError on bad
    input; InvariantViolation means a broken internal guarantee.
    """
    n = g.vertex_count
    if n == 0:
        raise GraphError("the empty graph has no layout")
    bfs_layering(g, 0)  # connectivity gate with the precise error

    tri: Triangulation | None = None
    tree: BfsTree | None = None
    if n <= 2:
        layering = bfs_layering(g, 0)
        septree = _leaf_tree(n, ell)
        added: tuple[Edge, ...] = ()
        guard_edges = list(g.edges)
    else:
        if rot is None:
            raise EmbeddingError("a rotation system is required for n >= 3")
        g2, rot2, added_bc = biconnect(g, rot)
        tri = triangulate(g2, rot2)
        added = added_bc + tri.added_edges
        tree, layering = bfs_tree(tri, 0)
        septree = build_separator_tree(tri, layering, ell, tree=tree)
        guard_edges = list(tri.graph.edges)

    ts: TreeTrackLayout = tree_track_layout(septree)
    inter = assign_tracks(g, septree, layering, ts)
    if verify_no_xcrossing(inter, guard_edges):
        raise InvariantViolation("track crossing in the unwrapped layout")

    depth_of = [septree.nodes[septree.node_of_vertex[v]].depth for v in range(n)]
    depth_edges: dict[int, list[Edge]] = {d: [] for d in range(1, septree.height + 1)}
    for u, v in guard_edges:
        if depth_of[u] == depth_of[v]:
            depth_edges[depth_of[u]].append((u, v))

    per_depth: dict[int, TrackAssignment] = {}
    for d in range(1, septree.height + 1):
        t_d = extract_depth_layout(inter, d, edges=depth_edges[d], ell=ell)
        per_depth[d] = wrap(t_d, ell, depth_edges[d])
    final = compose_final(inter, per_depth)
    if verify_no_xcrossing(final, guard_edges):
        raise InvariantViolation("track crossing in the wrapped layout")

    queues = tracks_to_queues(final, list(g.edges))

    c = ceil_log_three_halves(n)
    report = BoundReport(
        n=n,
        ell=ell,
        log_ceiling=c,
        tree_depth=septree.height,
        depth_bound=c + 1,
        track_count=final.track_count,
        track_bound=3 * ell * (c + 1),
        queue_count=queues.queue_count,
        queue_bound=max(final.track_count - 1, 0),
    )
    if not report.ok:
        raise InvariantViolation(f"layout breaks a guaranteed bound: {report}")
    return PipelineResult(
        graph=g,
        triangulation=tri,
        added_edges=added,
        layering=layering,
        tree=tree,
        septree=septree,
        intermediate=inter,
        per_depth=per_depth,
        final=final,
        queues=queues,
        report=report,
    )
