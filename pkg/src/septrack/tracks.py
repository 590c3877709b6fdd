"""Track assignments: three-index tracks, per-depth wrapping, and composition.

A track is an ordered colour class. Vertices get tracks keyed (depth of
their separator-tree node, BFS layer, within-node label); per depth these
collapse mod 3 to at most 3*ell tracks, and the per-depth layouts stack into
the final assignment. X-crossing freedom is always re-verified, never assumed.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property

from .errors import GraphError, InvariantViolation
from .graph import Edge, Graph, Layering
from .separators import SeparatorTree

TrackKey = tuple[int, ...]


@dataclass(frozen=True)
class TrackAssignment:
    """Ordered tracks: parallel tuples of key and vertex sequence, sorted by key."""

    keys: tuple[TrackKey, ...]
    sequences: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.keys) != len(self.sequences):
            raise GraphError("keys and sequences differ in length")
        if list(self.keys) != sorted(self.keys):
            raise GraphError("tracks must be sorted by key")
        if len(set(self.keys)) != len(self.keys):
            raise GraphError("duplicate track key")
        seen: set[int] = set()
        for seq in self.sequences:
            if not seq:
                raise GraphError("empty track")
            for v in seq:
                if v in seen:
                    raise GraphError(f"vertex {v} appears in two tracks")
                seen.add(v)

    @property
    def track_count(self) -> int:
        return len(self.keys)

    @cached_property
    def vertex_count(self) -> int:
        return sum(len(s) for s in self.sequences)

    @cached_property
    def track_index_of(self) -> dict[int, int]:
        return {v: t for t, seq in enumerate(self.sequences) for v in seq}

    @cached_property
    def position_of(self) -> dict[int, int]:
        return {v: p for seq in self.sequences for p, v in enumerate(seq)}

    def key_of(self, v: int) -> TrackKey:
        return self.keys[self.track_index_of[v]]

    def flat_order(self) -> list[int]:
        """All vertices, track by track in key order."""
        return [v for seq in self.sequences for v in seq]


def _assemble(groups: dict[TrackKey, list[int]]) -> TrackAssignment:
    keys = tuple(sorted(groups))
    return TrackAssignment(keys=keys, sequences=tuple(tuple(groups[k]) for k in keys))


@dataclass(frozen=True)
class TreeTrackLayout:
    """Left-to-right order of separator-tree nodes, one row per depth."""

    depth_orders: tuple[tuple[int, ...], ...]  # depth d at index d-1

    @cached_property
    def rank_of_node(self) -> dict[int, int]:
        return {nd: r for row in self.depth_orders for r, nd in enumerate(row)}


def tree_track_layout(st: SeparatorTree) -> TreeTrackLayout:
    """Depth-synchronized drawing order: children inherit the parent order;
    siblings are ordered by the smallest vertex in their subtree."""
    rows: list[list[int]] = [[0]]
    while True:
        nxt: list[int] = []
        for ni in rows[-1]:
            kids = sorted(st.nodes[ni].children, key=lambda c: min(st.nodes[c].component))
            nxt.extend(kids)
        if not nxt:
            break
        rows.append(nxt)
    layout = TreeTrackLayout(depth_orders=tuple(tuple(r) for r in rows))
    if sorted(layout.rank_of_node) != [nd.index for nd in st.nodes]:
        raise InvariantViolation("tree track layout lost nodes")
    return layout


def assign_tracks(
    g: Graph, st: SeparatorTree, layering: Layering, ts: TreeTrackLayout
) -> TrackAssignment:
    """The intermediate layout: vertex -> track (d, i, k), ordered by node rank.

    d is the depth of the vertex's node, i its layer, and k the 1-based rank
    of the vertex among its node's vertices in that layer (by vertex id).
    Within a track, vertices follow their nodes' left-to-right order.
    """
    label: dict[int, int] = {}
    by_node_layer: dict[tuple[int, int], list[int]] = defaultdict(list)
    for v in g.vertices():
        by_node_layer[(st.node_of_vertex[v], layering.layer_of[v])].append(v)
    for (_, _), vs in by_node_layer.items():
        vs.sort()
        if len(vs) > st.ell:
            raise InvariantViolation(
                f"{len(vs)} vertices of one node share a layer (ell={st.ell})"
            )
        for r, v in enumerate(vs):
            label[v] = r + 1
    rank = ts.rank_of_node
    groups: dict[TrackKey, list[int]] = defaultdict(list)
    for v in g.vertices():
        ni = st.node_of_vertex[v]
        key = (st.nodes[ni].depth, layering.layer_of[v], label[v])
        groups[key].append(v)
    for key, vs in groups.items():
        ranks = {rank[st.node_of_vertex[v]] for v in vs}
        if len(ranks) != len(vs):
            raise InvariantViolation(f"two vertices of one node on track {key}")
        vs.sort(key=lambda v: rank[st.node_of_vertex[v]])
    return _assemble(groups)


def extract_depth_layout(
    t: TrackAssignment, d: int, edges: list[Edge] | None = None, ell: int | None = None
) -> TrackAssignment:
    """Restrict the (d, i, k)-keyed layout to one depth; keys become (i, k).

    With ``edges`` (the depth subgraph's) and ``ell`` given, asserts the span
    bound: over the (i, k)-lexicographic track order, spans are <= 2*ell - 1.
    """
    groups = {
        key[1:]: list(seq) for key, seq in zip(t.keys, t.sequences) if key[0] == d
    }
    out = _assemble(groups) if groups else TrackAssignment(keys=(), sequences=())
    if edges is not None and ell is not None:
        stats = span_stats(out, edges)
        if stats.max_span > 2 * ell - 1:
            raise InvariantViolation(
                f"depth {d} span {stats.max_span} exceeds 2*ell-1 = {2 * ell - 1}"
            )
    return out


def wrap(t_d: TrackAssignment, ell: int, edges: list[Edge]) -> TrackAssignment:
    """Wrap a layered (i, k)-keyed layout onto track keys (i mod 3, k).

    Requires every edge to join equal or adjacent layers (checked first).
    Within a wrapped track, lower i comes first; ties keep the input order.
    The result is re-verified: at most 3*ell tracks, no X-crossings, and
    same-track vertices from different layers at least 3 layers apart.
    """
    layer_of = {v: key[0] for key, seq in zip(t_d.keys, t_d.sequences) for v in seq}
    for u, v in edges:
        if abs(layer_of[u] - layer_of[v]) > 1:
            raise GraphError(
                f"edge {(u, v)} spans layers {layer_of[u]} and {layer_of[v]}; "
                "wrapping requires |difference| <= 1"
            )
    groups: dict[TrackKey, list[int]] = defaultdict(list)
    for key, seq in sorted(zip(t_d.keys, t_d.sequences)):
        i, k = key[0], key[1]
        groups[(i % 3, k)].extend(seq)  # keys sorted => ascending i, ties in T order
    out = _assemble(groups)
    if out.track_count > 3 * ell:
        raise InvariantViolation(f"{out.track_count} wrapped tracks exceed 3*ell={3 * ell}")
    for seq in out.sequences:
        for a, b in zip(seq, seq[1:]):
            ia, ib = layer_of[a], layer_of[b]
            if ia != ib and ib - ia < 3:
                raise InvariantViolation("wrapped track holds layers closer than 3 apart")
    bad = verify_no_xcrossing(out, edges)
    if bad:
        raise InvariantViolation(f"wrapping produced X-crossings: {bad[:3]}")
    return out


def compose_final(
    t: TrackAssignment, wrapped: dict[int, TrackAssignment]
) -> TrackAssignment:
    """Stack the per-depth wrapped layouts into the final (d, i mod 3, k) keys."""
    groups: dict[TrackKey, list[int]] = {}
    covered: set[int] = set()
    for d, td in wrapped.items():
        for key, seq in zip(td.keys, td.sequences):
            groups[(d,) + key] = list(seq)
            covered.update(seq)
    if covered != set(t.track_index_of):
        raise InvariantViolation("wrapped layouts do not cover the assignment")
    return _assemble(groups)


def verify_no_xcrossing(t: TrackAssignment, edges: list[Edge]) -> list[tuple[Edge, Edge]]:
    """All X-crossing edge pairs: same track pair, endpoints interleaving.

    Same-track edges are ignored here (see same_track_edges). A sorted sweep
    first detects whether a bucket is clean; only violating buckets pay the
    quadratic enumeration.
    """
    tr = t.track_index_of
    pos = t.position_of
    buckets: dict[tuple[int, int], list[tuple[int, int, Edge]]] = defaultdict(list)
    for u, v in edges:
        a, b = tr[u], tr[v]
        if a == b:
            continue
        if a > b:
            a, b, u, v = b, a, v, u
        buckets[(a, b)].append((pos[u], pos[v], (u, v)))
    out: list[tuple[Edge, Edge]] = []
    for items in buckets.values():
        items.sort()
        clean = all(x[1] <= y[1] for x, y in zip(items, items[1:]))
        if clean:
            continue
        for i, (pa, pb, e) in enumerate(items):
            for qa, qb, f in items[i + 1 :]:
                if (pa - qa) * (pb - qb) < 0:
                    out.append((e, f))
    return out


def same_track_edges(t: TrackAssignment, edges: list[Edge]) -> list[Edge]:
    tr = t.track_index_of
    return [e for e in edges if tr[e[0]] == tr[e[1]]]


@dataclass(frozen=True)
class EdgeSpanStats:
    max_span: int
    histogram: dict[int, int]


def span_stats(t: TrackAssignment, edges: list[Edge]) -> EdgeSpanStats:
    """Spans |track(u) - track(v)| over the assignment's flat track order."""
    tr = t.track_index_of
    hist = Counter(abs(tr[u] - tr[v]) for u, v in edges)
    return EdgeSpanStats(max_span=max(hist) if hist else 0, histogram=dict(hist))
