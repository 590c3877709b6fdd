"""Combinatorial planar embeddings: face tracing, biconnection, triangulation.

An embedding is a rotation system: the cyclic order of neighbors around each
vertex. Faces are traced with the successor rule "from directed edge (u,v),
continue to (v, w) where w follows u in the rotation at v". Planarity is
enforced by the Euler check V - E + F = 2 on every construction; nothing here
tests planarity of an abstract graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import EmbeddingError, GraphError, InvariantViolation
from .graph import Edge, Graph, connected_components, normalize_edge

DirectedEdge = tuple[int, int]


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic neighbor order per vertex; index v holds the rotation at v."""

    rotations: tuple[tuple[int, ...], ...]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])


@dataclass(frozen=True)
class FaceSet:
    """All facial walks of an embedding plus a designated outer face index."""

    walks: tuple[tuple[DirectedEdge, ...], ...]
    outer: int

    @property
    def count(self) -> int:
        return len(self.walks)

    def walk_vertices(self, i: int) -> tuple[int, ...]:
        return tuple(u for u, _ in self.walks[i])


def validate_rotation(g: Graph, rot: RotationSystem) -> None:
    if len(rot.rotations) != g.vertex_count:
        raise EmbeddingError(
            f"rotation system covers {len(rot.rotations)} vertices, graph has {g.vertex_count}"
        )
    for v in g.vertices():
        r = rot.rotations[v]
        if len(set(r)) != len(r):
            raise EmbeddingError(f"rotation at {v} repeats a neighbor")
        if set(r) != set(g.adjacency[v]):
            raise EmbeddingError(f"rotation at {v} does not match adjacency")


def faces(g: Graph, rot: RotationSystem) -> FaceSet:
    """Trace all facial walks and verify the Euler relation.

    Requires a connected graph; raises EmbeddingError with (V, E, F) when the
    rotation system is not a planar embedding.
    """
    validate_rotation(g, rot)
    if g.vertex_count == 0:
        raise GraphError("empty graph has no embedding")
    if g.vertex_count >= 2:
        comps = connected_components(g)
        if len(comps) > 1:
            from .errors import DisconnectedGraphError

            raise DisconnectedGraphError(min(comps[1]))
    if g.vertex_count == 1:
        return FaceSet(walks=((),), outer=0)

    index_at: list[dict[int, int]] = [
        {w: i for i, w in enumerate(rot.rotations[v])} for v in g.vertices()
    ]
    unused: set[DirectedEdge] = set()
    for u, v in g.edges:
        unused.add((u, v))
        unused.add((v, u))
    # walks start at the smallest unused directed edge; a sorted sweep keeps
    # that rule while avoiding a min() scan per face
    pending = sorted(unused)
    cursor = 0
    walks: list[tuple[DirectedEdge, ...]] = []
    while cursor < len(pending):
        start = pending[cursor]
        if start not in unused:
            cursor += 1
            continue
        walk: list[DirectedEdge] = []
        u, v = start
        while True:
            walk.append((u, v))
            unused.discard((u, v))
            r = rot.rotations[v]
            u, v = v, r[(index_at[v][u] + 1) % len(r)]
            if (u, v) == start:
                break
        walks.append(tuple(walk))

    V, E, F = g.vertex_count, g.edge_count, len(walks)
    if V - E + F != 2:
        raise EmbeddingError(f"not a planar embedding: V={V} E={E} F={F}")
    outer = max(
        range(F), key=lambda i: (len(walks[i]), [-u for u, _ in walks[i]])
    )
    return FaceSet(walks=tuple(walks), outer=outer)


# ---------------------------------------------------------------------------
# chord insertion
# ---------------------------------------------------------------------------


def _insert_before(rotation: list[int], new: int, anchor: int) -> None:
    rotation.insert(rotation.index(anchor), new)


def _add_chord(
    rot_lists: list[list[int]],
    edge_set: set[Edge],
    u: int,
    u_succ: int,
    w: int,
    w_succ: int,
) -> None:
    """Add chord (u, w) inside the face where u's walk-successor is u_succ and
    w's is w_succ. Splits that face; all other faces are untouched."""
    e = normalize_edge(u, w)
    if e in edge_set:
        raise InvariantViolation(f"chord {e} already present")
    _insert_before(rot_lists[u], w, u_succ)
    _insert_before(rot_lists[w], u, w_succ)
    edge_set.add(e)


# ---------------------------------------------------------------------------
# biconnection
# ---------------------------------------------------------------------------


def _articulation_blocks(g: Graph) -> tuple[set[int], dict[Edge, int]]:
    """Articulation vertices and a biconnected-block id per undirected edge.

    Iterative lowpoint DFS with an edge stack (a block is popped whenever a
    child subtree cannot reach above its parent).
    """
    n = g.vertex_count
    disc = [-1] * n
    low = [0] * n
    block_of: dict[Edge, int] = {}
    art: set[int] = set()
    counter = 0
    block = 0
    estack: list[Edge] = []
    for root in range(n):
        if disc[root] >= 0:
            continue
        root_children = 0
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]  # vertex, parent, next child idx
        while stack:
            v, parent, ci = stack[-1]
            if ci == 0:
                disc[v] = low[v] = counter
                counter += 1
            adj = g.adjacency[v]
            advanced = False
            while ci < len(adj):
                w = adj[ci]
                ci += 1
                if w == parent:
                    continue
                if disc[w] < 0:
                    stack[-1] = (v, parent, ci)
                    estack.append(normalize_edge(v, w))
                    if v == root:
                        root_children += 1
                    stack.append((w, v, 0))
                    advanced = True
                    break
                if disc[w] < disc[v]:  # back edge to an ancestor
                    estack.append(normalize_edge(v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    if parent != root or root_children > 1:
                        art.add(parent)
                    top = normalize_edge(parent, v)
                    while True:
                        e = estack.pop()
                        block_of[e] = block
                        if e == top:
                            break
                    block += 1
        if estack:
            raise InvariantViolation("edge stack not drained after component")
    return art, block_of


def is_biconnected(g: Graph) -> bool:
    if g.vertex_count < 3:
        return False
    if len(connected_components(g)) != 1:
        return False
    art, _ = _articulation_blocks(g)
    return not art


def biconnect(g: Graph, rot: RotationSystem) -> tuple[Graph, RotationSystem, tuple[Edge, ...]]:
    """Add chords until the graph is 2-connected, preserving the embedding.

    At an articulation vertex v, two rotation-consecutive neighbors lying in
    different blocks share a face corner at v; the chord joining them lives
    inside that face (planar-safe) and cannot already exist, or the blocks
    would not be distinct. One chord per round until no articulation remains.
    Requires a connected graph with at least 3 vertices.
    """
    validate_rotation(g, rot)
    if g.vertex_count < 3:
        raise GraphError("biconnect requires at least 3 vertices")
    faces(g, rot)  # connectivity + Euler guard
    cur = g
    rot_lists = [list(r) for r in rot.rotations]
    edge_set = set(g.edges)
    added: list[Edge] = []
    while True:
        art, block_of = _articulation_blocks(cur)
        if not art:
            break
        v = min(art)
        r = rot_lists[v]
        chord = None
        for i in range(len(r)):
            a, b = r[i], r[(i + 1) % len(r)]
            if a == b:
                continue
            if block_of[normalize_edge(v, a)] != block_of[normalize_edge(v, b)]:
                chord = (a, b)
                break
        if chord is None:
            raise InvariantViolation(f"articulation vertex {v} has single-block rotation")
        a, b = chord
        # corner (a, v, b): b follows a in the rotation at v, so the face walk
        # passes a -> v -> b; chord (a, b) splits it.  a's successor in that
        # walk is v, and b's successor is the neighbor after v in b's rotation
        # as seen by the walk, which the insertion rule needs explicitly:
        rb = rot_lists[b]
        b_succ = rb[(rb.index(v) + 1) % len(rb)]
        # the walk continues (v, b) then (b, x) where x follows v in rot[b]
        _add_chord(rot_lists, edge_set, a, v, b, b_succ)
        added.append(normalize_edge(a, b))
        cur = Graph.from_edges(g.vertex_count, edge_set)
    new_rot = RotationSystem(tuple(tuple(r) for r in rot_lists))
    faces(cur, new_rot)  # re-verify Euler after augmentation
    return cur, new_rot, tuple(added)


# ---------------------------------------------------------------------------
# triangulation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Triangulation:
    """Edge-maximal planar embedding: every face a triangle, E = 3V - 6."""

    graph: Graph
    rotation: RotationSystem
    added_edges: tuple[Edge, ...]


def _triangulate_face(
    walk_vertices: Sequence[int],
    rot_lists: list[list[int]],
    edge_set: set[Edge],
    added: list[Edge],
) -> None:
    poly = list(walk_vertices)
    if len(poly) != len(set(poly)):
        raise EmbeddingError("face walk repeats a vertex; graph is not 2-connected")
    L = len(poly)
    if L <= 3:
        return

    # A fan keeps the added chords star-shaped when no fan chord duplicates an
    # existing edge; otherwise clip ears wherever the chord is absent.  Two
    # crossing chords of a facial cycle cannot both pre-exist in a planar
    # embedding, so an absent ear chord always exists and clipping terminates.
    fan_apex = None
    for idx in sorted(range(L), key=lambda i: poly[i]):
        a = poly[idx]
        if all(
            normalize_edge(a, poly[(idx + j) % L]) not in edge_set
            for j in range(2, L - 1)
        ):
            fan_apex = idx
            break
    if fan_apex is not None:
        poly = poly[fan_apex:] + poly[:fan_apex]

    while len(poly) > 3:
        L = len(poly)
        ear = None
        if fan_apex is not None:
            ear = 0
        else:
            for i in range(L):
                if normalize_edge(poly[i], poly[(i + 2) % L]) not in edge_set:
                    ear = i
                    break
            if ear is None:
                raise InvariantViolation("no ear chord available in face")
        u, mid, w, w_succ = (
            poly[ear],
            poly[(ear + 1) % L],
            poly[(ear + 2) % L],
            poly[(ear + 3) % L],
        )
        _add_chord(rot_lists, edge_set, u, mid, w, w_succ)
        added.append(normalize_edge(u, w))
        poly.pop((ear + 1) % L)


def triangulate(g: Graph, rot: RotationSystem) -> Triangulation:
    """Add chords inside every non-triangular face until all faces are triangles.

    Input must be a 2-connected planar embedding with n >= 3.  The outer face
    is triangulated like any other.  Postconditions asserted: E = 3V - 6 and
    every facial walk a triangle of distinct vertices.
    """
    if g.vertex_count < 3:
        raise GraphError("triangulate requires at least 3 vertices")
    fs = faces(g, rot)
    rot_lists = [list(r) for r in rot.rotations]
    edge_set = set(g.edges)
    added: list[Edge] = []
    for i in range(fs.count):
        _triangulate_face(fs.walk_vertices(i), rot_lists, edge_set, added)
    tg = Graph.from_edges(g.vertex_count, edge_set)
    trot = RotationSystem(tuple(tuple(r) for r in rot_lists))
    out = faces(tg, trot)
    for w in out.walks:
        if len(w) != 3 or len({u for u, _ in w}) != 3:
            raise InvariantViolation("triangulation left a non-triangular face")
    if tg.edge_count != 3 * tg.vertex_count - 6:
        raise InvariantViolation(
            f"triangulation is not edge-maximal: E={tg.edge_count} V={tg.vertex_count}"
        )
    return Triangulation(graph=tg, rotation=trot, added_edges=tuple(added))
