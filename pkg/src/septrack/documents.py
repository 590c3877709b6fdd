"""File formats: graph, layout, and drawing documents plus SVG/OBJ export.

Three JSON document kinds, each self-identifying via format/version fields:

  septrack-graph    vertex count, edge list, optional rotation system + label
  septrack-layout   layering, separator tree, final tracks, queues, bounds
  septrack-drawing  integer positions, one triple per vertex

Loads re-check structure and internal consistency; the layout loader redoes
every check that does not need the (unstored) triangulation, and
``check_layout`` recomputes the pipeline for the rest. ``trust=True`` skips
the consistency work but never the structural parsing.
"""

from __future__ import annotations

import json
from typing import Any

from .drawing import GridDrawing3D, verify_drawing
from .embedding import RotationSystem, validate_rotation
from .errors import FormatError, SeptrackError
from .graph import Graph, Layering, normalize_edge, validate_layering
from .pipeline import BoundReport, PipelineResult, run_pipeline
from .queues import QueueLayout, validate_queue_layout
from .separators import SeparatorNode, SeparatorTree, ceil_log_three_halves
from .tracks import TrackAssignment, verify_no_xcrossing

GRAPH_FORMAT = "septrack-graph"
LAYOUT_FORMAT = "septrack-layout"
DRAWING_FORMAT = "septrack-drawing"
VERSION = 1


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: document must be a JSON object")
    return doc


def _expect(doc: dict, fmt: str) -> None:
    if doc.get("format") != fmt:
        raise FormatError(f"expected format {fmt!r}, found {doc.get('format')!r}")
    if doc.get("version") != VERSION:
        raise FormatError(f"unsupported {fmt} version {doc.get('version')!r}")


def _int_list(value: Any, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) for x in value):
        raise FormatError(f"{what} must be a list of integers")
    return value


def _edge_list(value: Any, what: str) -> list[tuple[int, int]]:
    if not isinstance(value, list):
        raise FormatError(f"{what} must be a list of [u, v] pairs")
    out = []
    for item in value:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, int) for x in item)):
            raise FormatError(f"{what} must be a list of [u, v] pairs")
        out.append((item[0], item[1]))
    return out


def _write_json(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, separators=(",", ":"))
        fh.write("\n")


# ---------------------------------------------------------------------------
# graph documents
# ---------------------------------------------------------------------------


def save_graph(
    path: str, g: Graph, rot: RotationSystem | None = None, label: str | None = None
) -> None:
    doc: dict[str, Any] = {
        "format": GRAPH_FORMAT,
        "version": VERSION,
        "vertex_count": g.vertex_count,
        "edges": [list(e) for e in g.edges],
        "rotation": [list(r) for r in rot.rotations] if rot is not None else None,
    }
    if label is not None:
        doc["label"] = label
    _write_json(path, doc)


def load_graph(path: str) -> tuple[Graph, RotationSystem | None, str | None]:
    doc = _load_json(path)
    _expect(doc, GRAPH_FORMAT)
    n = doc.get("vertex_count")
    if not isinstance(n, int) or n < 0:
        raise FormatError("vertex_count must be a non-negative integer")
    edges = _edge_list(doc.get("edges"), "edges")
    try:
        g = Graph.from_edges(n, edges)
    except SeptrackError as exc:
        raise FormatError(f"bad graph: {exc}") from exc
    rot = None
    raw_rot = doc.get("rotation")
    if raw_rot is not None:
        if not isinstance(raw_rot, list) or len(raw_rot) != n:
            raise FormatError("rotation must list one neighbor ring per vertex")
        rot = RotationSystem(tuple(tuple(_int_list(r, "rotation ring")) for r in raw_rot))
        try:
            validate_rotation(g, rot)
        except SeptrackError as exc:
            raise FormatError(f"bad rotation system: {exc}") from exc
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise FormatError("label must be a string")
    return g, rot, label


# ---------------------------------------------------------------------------
# layout documents
# ---------------------------------------------------------------------------


def save_layout(path: str, res: PipelineResult) -> None:
    st = res.septree
    rep = res.report
    doc = {
        "format": LAYOUT_FORMAT,
        "version": VERSION,
        "vertex_count": res.graph.vertex_count,
        "ell": st.ell,
        "layering": list(res.layering.layer_of),
        "separator_tree": {
            "parent": [nd.parent for nd in st.nodes],
            "vertex_node": list(st.node_of_vertex),
        },
        "tracks": {
            "keys": [list(k) for k in res.final.keys],
            "sequences": [list(s) for s in res.final.sequences],
        },
        "queues": {
            "order": list(res.queues.vertex_order),
            "edges": [list(e) for e in res.queues.edges],
            "queue_of": list(res.queues.queue_of),
            "queue_count": res.queues.queue_count,
        },
        "report": {
            "n": rep.n,
            "ell": rep.ell,
            "log_ceiling": rep.log_ceiling,
            "tree_depth": rep.tree_depth,
            "depth_bound": rep.depth_bound,
            "track_count": rep.track_count,
            "track_bound": rep.track_bound,
            "queue_count": rep.queue_count,
            "queue_bound": rep.queue_bound,
        },
    }
    _write_json(path, doc)


def _rebuild_septree(parent: list[int], vertex_node: list[int], ell: int) -> SeparatorTree:
    nnodes = len(parent)
    if nnodes == 0:
        raise FormatError("separator tree has no nodes")
    if parent[0] != -1:
        raise FormatError("separator tree node 0 must be the root (parent -1)")
    children: list[list[int]] = [[] for _ in range(nnodes)]
    depth = [0] * nnodes
    depth[0] = 1
    for i in range(1, nnodes):
        p = parent[i]
        if not 0 <= p < i:
            raise FormatError(f"node {i} has parent {p}; parents must precede children")
        children[p].append(i)
        depth[i] = depth[p] + 1
    own: list[set[int]] = [set() for _ in range(nnodes)]
    for v, ni in enumerate(vertex_node):
        if not 0 <= ni < nnodes:
            raise FormatError(f"vertex {v} mapped to unknown node {ni}")
        own[ni].add(v)
    comp: list[set[int]] = [set(s) for s in own]
    for i in range(nnodes - 1, 0, -1):
        comp[parent[i]] |= comp[i]
    nodes = tuple(
        SeparatorNode(
            index=i,
            depth=depth[i],
            parent=parent[i],
            children=tuple(children[i]),
            vertices=frozenset(own[i]),
            component=frozenset(comp[i]),
            is_leaf=not children[i],
        )
        for i in range(nnodes)
    )
    return SeparatorTree(nodes=nodes, node_of_vertex=tuple(vertex_node), ell=ell)


def load_layout(
    path: str, g: Graph | None = None, trust: bool = False
) -> tuple[TrackAssignment, QueueLayout, SeparatorTree, Layering, BoundReport]:
    """Parse a layout document; with a graph, re-run the independent checks.

    The graph-dependent checks are the ones that hold for any subgraph of the
    triangulation the layout was computed on: layering step bound, track
    crossing freedom, and queue validity over exactly the graph's edges.
    """
    doc = _load_json(path)
    _expect(doc, LAYOUT_FORMAT)
    n = doc.get("vertex_count")
    if not isinstance(n, int) or n < 0:
        raise FormatError("vertex_count must be a non-negative integer")
    ell = doc.get("ell")
    if not isinstance(ell, int) or ell < 2:
        raise FormatError("ell must be an integer >= 2")
    layer_of = _int_list(doc.get("layering"), "layering")
    if len(layer_of) != n:
        raise FormatError("layering length must equal vertex_count")
    layering = Layering(tuple(layer_of))

    st_doc = doc.get("separator_tree")
    if not isinstance(st_doc, dict):
        raise FormatError("separator_tree must be an object")
    parent = _int_list(st_doc.get("parent"), "separator_tree.parent")
    vertex_node = _int_list(st_doc.get("vertex_node"), "separator_tree.vertex_node")
    if len(vertex_node) != n:
        raise FormatError("separator_tree.vertex_node length must equal vertex_count")
    septree = _rebuild_septree(parent, vertex_node, ell)

    tr_doc = doc.get("tracks")
    if not isinstance(tr_doc, dict) or not isinstance(tr_doc.get("keys"), list):
        raise FormatError("tracks must hold keys and sequences lists")
    keys = tuple(tuple(_int_list(k, "track key")) for k in tr_doc["keys"])
    seq_doc = tr_doc.get("sequences")
    if not isinstance(seq_doc, list) or len(seq_doc) != len(keys):
        raise FormatError("tracks.sequences must pair up with tracks.keys")
    sequences = tuple(tuple(_int_list(s, "track sequence")) for s in seq_doc)
    try:
        final = TrackAssignment(keys=keys, sequences=sequences)
    except SeptrackError as exc:
        raise FormatError(f"bad track assignment: {exc}") from exc

    q_doc = doc.get("queues")
    if not isinstance(q_doc, dict):
        raise FormatError("queues must be an object")
    order = _int_list(q_doc.get("order"), "queues.order")
    q_edges = _edge_list(q_doc.get("edges"), "queues.edges")
    queue_of = _int_list(q_doc.get("queue_of"), "queues.queue_of")
    qcount = q_doc.get("queue_count")
    if not isinstance(qcount, int) or len(queue_of) != len(q_edges):
        raise FormatError("queues.queue_of must align with queues.edges")
    if any(not 0 <= qi < qcount for qi in queue_of) or (q_edges and qcount > len(q_edges)):
        raise FormatError("queue indices must lie in [0, queue_count)")
    if not q_edges and qcount != 0:
        raise FormatError("an edgeless layout has queue_count 0")
    try:
        queues = QueueLayout(
            vertex_order=tuple(order),
            edges=tuple(q_edges),
            queue_of=tuple(queue_of),
            queue_count=qcount,
        )
    except SeptrackError as exc:
        raise FormatError(f"bad queue layout: {exc}") from exc

    rep_doc = doc.get("report")
    if not isinstance(rep_doc, dict):
        raise FormatError("report must be an object")
    fields = (
        "n", "ell", "log_ceiling", "tree_depth", "depth_bound",
        "track_count", "track_bound", "queue_count", "queue_bound",
    )
    vals = {}
    for f in fields:
        if not isinstance(rep_doc.get(f), int):
            raise FormatError(f"report.{f} must be an integer")
        vals[f] = rep_doc[f]
    report = BoundReport(**vals)

    if not trust:
        _check_layout_consistency(n, ell, layering, septree, final, queues, report, g)
    return final, queues, septree, layering, report


def _check_layout_consistency(
    n: int,
    ell: int,
    layering: Layering,
    septree: SeparatorTree,
    final: TrackAssignment,
    queues: QueueLayout,
    report: BoundReport,
    g: Graph | None,
) -> None:
    if sorted(final.flat_order()) != list(range(n)):
        raise FormatError("tracks do not cover the vertex set exactly")
    if sorted(queues.vertex_order) != list(range(n)):
        raise FormatError("queue order is not a permutation of the vertices")
    if list(queues.vertex_order) != final.flat_order():
        raise FormatError("queue order does not match the concatenated tracks")
    c = ceil_log_three_halves(n)
    expected = BoundReport(
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
    if report != expected:
        raise FormatError(f"report does not match the stored layout: {report} != {expected}")
    if not report.ok:
        raise FormatError(f"stored layout breaks a guaranteed bound: {report}")
    if g is not None:
        if g.vertex_count != n:
            raise FormatError(f"layout is for {n} vertices, graph has {g.vertex_count}")
        stored = {normalize_edge(*e) for e in queues.edges}
        if stored != g.edge_set:
            raise FormatError("queue edges do not match the graph's edge set")
        try:
            long = validate_layering(g, layering)
        except SeptrackError as exc:
            raise FormatError(f"bad layering: {exc}") from exc
        if long:
            raise FormatError(f"layering violates the unit step bound on {long[:3]}")
        if verify_no_xcrossing(final, list(g.edges)):
            raise FormatError("stored tracks have a crossing on the graph's edges")
        bad = validate_queue_layout(g, queues)
        if bad:
            raise FormatError(f"stored queue layout is invalid: {bad[:3]}")


def check_layout(
    g: Graph,
    rot: RotationSystem | None,
    final: TrackAssignment,
    queues: QueueLayout,
    septree: SeparatorTree,
    layering: Layering,
    report: BoundReport,
) -> list[str]:
    """Full re-verification of a stored layout; returns failure descriptions.

    Recomputes the deterministic pipeline and compares every stored artifact
    against the recomputation, which re-runs all internal certificates. When
    the graph needs a rotation system and none is given, only that comparison
    is skipped (the load-time subgraph checks still hold).
    """
    problems: list[str] = []
    if g.vertex_count >= 3 and rot is None:
        problems.append("cannot recompute: no rotation system stored with the graph")
        return problems
    try:
        res = run_pipeline(g, rot, ell=report.ell)
    except SeptrackError as exc:
        return [f"pipeline recomputation failed: {exc}"]
    if res.layering.layer_of != layering.layer_of:
        problems.append("layering differs from recomputation")
    if [nd.parent for nd in res.septree.nodes] != [nd.parent for nd in septree.nodes]:
        problems.append("separator tree shape differs from recomputation")
    if res.septree.node_of_vertex != septree.node_of_vertex:
        problems.append("vertex-to-node map differs from recomputation")
    if res.final.keys != final.keys or res.final.sequences != final.sequences:
        problems.append("track assignment differs from recomputation")
    if (
        res.queues.vertex_order != queues.vertex_order
        or res.queues.edges != queues.edges
        or res.queues.queue_of != queues.queue_of
    ):
        problems.append("queue layout differs from recomputation")
    if res.report != report:
        problems.append(f"bound report differs: stored {report}, recomputed {res.report}")
    return problems


# ---------------------------------------------------------------------------
# drawing documents
# ---------------------------------------------------------------------------


def save_drawing(path: str, d: GridDrawing3D) -> None:
    doc = {
        "format": DRAWING_FORMAT,
        "version": VERSION,
        "positions": [list(p) for p in d.positions],
    }
    _write_json(path, doc)


def load_drawing(path: str, g: Graph | None = None, trust: bool = False) -> GridDrawing3D:
    doc = _load_json(path)
    _expect(doc, DRAWING_FORMAT)
    raw = doc.get("positions")
    if not isinstance(raw, list):
        raise FormatError("positions must be a list of [x, y, z] triples")
    pts = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 3 and all(isinstance(c, int) for c in item)):
            raise FormatError("positions must be a list of [x, y, z] triples")
        pts.append((item[0], item[1], item[2]))
    d = GridDrawing3D(tuple(pts))
    if g is not None and not trust:
        bad = verify_drawing(g, d)
        if bad:
            raise FormatError(f"stored drawing is invalid: {bad[:3]}")
    return d


# ---------------------------------------------------------------------------
# renderings (SVG for layouts, OBJ for drawings)
# ---------------------------------------------------------------------------


def export_track_svg(final: TrackAssignment, g: Graph, path: str) -> None:
    """Tracks as horizontal rails, vertices as dots, edges as arcs."""
    t = final.track_count
    width_slots = max((len(s) for s in final.sequences), default=1)
    xstep, ystep, margin = 48, 56, 40
    width = margin * 2 + (width_slots - 1) * xstep + 16
    height = margin * 2 + max(t - 1, 0) * ystep

    def xy(v: int) -> tuple[int, int]:
        ti = final.track_index_of[v]
        return margin + final.position_of[v] * xstep, margin + ti * ystep

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<style>line.rail{stroke:#ccc} path.e{stroke:#336;fill:none} '
        "circle{fill:#822} text{font:10px monospace;fill:#444}</style>",
    ]
    for ti in range(t):
        y = margin + ti * ystep
        x1 = margin + (len(final.sequences[ti]) - 1) * xstep
        parts.append(f'<line class="rail" x1="{margin - 12}" y1="{y}" x2="{x1 + 12}" y2="{y}"/>')
        label = ",".join(str(k) for k in final.keys[ti])
        parts.append(f'<text x="2" y="{y + 3}">({label})</text>')
    for u, v in g.edges:
        (x1, y1), (x2, y2) = xy(u), xy(v)
        if y1 == y2:  # same-track edge: bow above the rail
            mid = (x1 + x2) // 2
            parts.append(f'<path class="e" d="M{x1},{y1} Q{mid},{y1 - 24} {x2},{y2}"/>')
        else:
            parts.append(f'<path class="e" d="M{x1},{y1} L{x2},{y2}"/>')
    for v in range(g.vertex_count):
        x, y = xy(v)
        parts.append(f'<circle cx="{x}" cy="{y}" r="3"/>')
        parts.append(f'<text x="{x + 4}" y="{y - 4}">{v}</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts) + "\n")


def export_drawing_obj(d: GridDrawing3D, g: Graph, path: str) -> None:
    """Wavefront OBJ: one v record per vertex, one l record per edge."""
    lines = [f"v {x} {y} {z}" for x, y, z in d.positions]
    lines += [f"l {u + 1} {v + 1}" for u, v in g.edges]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
