"""Layered separators from BFS-tree fundamental cycles, and the separator tree.

The input is a triangulation with a BFS layering. Every non-tree edge closes
a fundamental cycle with at most 2 vertices per layer; some such cycle always
splits the (weighted) graph 2/3-balanced. Recursing on the components yields
a separator tree of logarithmic height whose nodes partition the vertices.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from .embedding import FaceSet, Triangulation, faces
from .errors import GraphError, InvariantViolation
from .graph import (
    Edge,
    Graph,
    Layering,
    Separation,
    connected_components,
    normalize_edge,
    validate_separation,
)


def ceil_log_three_halves(n: int) -> int:
    """Smallest integer h with (3/2)**h >= n, computed exactly."""
    if n < 1:
        raise GraphError(f"positive n required, got {n}")
    h = 0
    while 3**h < n * 2**h:
        h += 1
    return h


@dataclass(frozen=True)
class BfsTree:
    root: int
    parent: tuple[int, ...]  # -1 at the root
    depth: tuple[int, ...]
    order: tuple[int, ...]  # visit order

    def is_tree_edge(self, u: int, v: int) -> bool:
        return self.parent[u] == v or self.parent[v] == u


def _graph_of(g: Triangulation | Graph) -> Graph:
    return g.graph if isinstance(g, Triangulation) else g


def bfs_tree(tri: Triangulation | Graph, root: int = 0) -> tuple[BfsTree, Layering]:
    """Deterministic BFS tree plus its layering (layers = distance to root)."""
    from collections import deque

    g = _graph_of(tri)
    n = g.vertex_count
    if not 0 <= root < n:
        raise GraphError(f"root {root} out of range for {n} vertices")
    parent = [-1] * n
    depth = [-1] * n
    order = []
    depth[root] = 0
    q = deque([root])
    while q:
        v = q.popleft()
        order.append(v)
        for w in g.adjacency[v]:
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                parent[w] = v
                q.append(w)
    if len(order) != n:
        missing = depth.index(-1)
        from .errors import DisconnectedGraphError

        raise DisconnectedGraphError(missing)
    for u, v in g.edges:
        # BFS layering: no edge skips a layer
        assert abs(depth[u] - depth[v]) <= 1
    return (
        BfsTree(root=root, parent=tuple(parent), depth=tuple(depth), order=tuple(order)),
        Layering(layer_of=tuple(depth)),
    )


def nontree_edges(g: Graph, tree: BfsTree) -> list[Edge]:
    return [e for e in g.edges if not tree.is_tree_edge(*e)]


@dataclass(frozen=True)
class FundamentalCycle:
    """The unique cycle closed by a non-tree edge: both root paths to the LCA."""

    vertices: tuple[int, ...]  # u .. lca .. v, with closing edge (u, v)
    closing_edge: Edge

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def edges(self) -> list[Edge]:
        cyc = [
            normalize_edge(self.vertices[i], self.vertices[i + 1])
            for i in range(len(self.vertices) - 1)
        ]
        cyc.append(normalize_edge(*self.closing_edge))
        return cyc


def fundamental_cycle(tree: BfsTree, edge: tuple[int, int], layering: Layering | None = None) -> FundamentalCycle:
    u, v = edge
    if tree.is_tree_edge(u, v):
        raise GraphError(f"edge {edge} is a tree edge; no fundamental cycle")
    path_u = [u]
    path_v = [v]
    a, b = u, v
    while tree.depth[a] > tree.depth[b]:
        a = tree.parent[a]
        path_u.append(a)
    while tree.depth[b] > tree.depth[a]:
        b = tree.parent[b]
        path_v.append(b)
    while a != b:
        a = tree.parent[a]
        path_u.append(a)
        b = tree.parent[b]
        path_v.append(b)
    # path_u ends at the LCA; path_v repeats it
    verts = tuple(path_u + path_v[-2::-1])
    counts = Counter(tree.depth[x] for x in verts)
    if max(counts.values()) > 2:
        raise InvariantViolation("fundamental cycle with more than 2 vertices in a layer")
    return FundamentalCycle(vertices=verts, closing_edge=normalize_edge(u, v))


def cycle_sides(
    tri: Triangulation, cyc: FundamentalCycle, fs: FaceSet | None = None
) -> tuple[frozenset[int], frozenset[int]]:
    """Classify non-cycle vertices by dual traversal from the outer face.

    Returns (inside, outside); the outer face's side is "outside". No edge
    joins the two sides (asserted).
    """
    from collections import deque

    g = tri.graph
    cset = cyc.vertex_set
    if len(cyc.vertices) != len(cset) or len(cset) < 3:
        raise GraphError("not a simple cycle")
    cedges = set()
    for e in cyc.edges():
        if not g.has_edge(*e):
            raise GraphError(f"cycle step {e} is not a graph edge")
        cedges.add(e)
    if fs is None:
        fs = faces(g, tri.rotation)
    side_of = {}  # directed edge -> face index
    for fi, walk in enumerate(fs.walks):
        for de in walk:
            side_of[de] = fi
    seen = [False] * fs.count
    seen[fs.outer] = True
    q = deque([fs.outer])
    while q:
        fi = q.popleft()
        for u, v in fs.walks[fi]:
            if normalize_edge(u, v) in cedges:
                continue
            fj = side_of[(v, u)]
            if not seen[fj]:
                seen[fj] = True
                q.append(fj)
    outside = set()
    for fi, walk in enumerate(fs.walks):
        if seen[fi]:
            for u, _ in walk:
                outside.add(u)
    outside -= cset
    inside = frozenset(g.vertices()) - outside - cset
    bad = validate_separation(g, Separation(frozenset(inside | cset), frozenset(outside | cset)))
    if bad:
        raise InvariantViolation(f"cycle does not separate: crossing edges {bad[:3]}")
    return frozenset(inside), frozenset(outside)


class CycleIndex:
    """Scans every fundamental cycle's interior weight in one vectorized pass.

    The duals of the non-tree edges form a spanning tree of the dual graph;
    rooted at the outer face, the faces enclosed by the cycle of non-tree
    edge e are exactly the subtree hanging off e's dual edge, a contiguous
    Euler-tour interval. A vertex is strictly inside iff its canonical face
    is enclosed and it is not on the cycle, so one prefix-sum per weighting
    plus static per-cycle corrections computes every interior weight.
    """

    def __init__(self, tri: Triangulation, tree: BfsTree, fs: FaceSet | None = None):
        g = tri.graph
        n = g.vertex_count
        if n < 4:
            raise GraphError("cycle index needs a triangulation on >= 4 vertices")
        if fs is None:
            fs = faces(g, tri.rotation)
        self.tri = tri
        self.tree = tree
        self.candidates: list[Edge] = sorted(nontree_edges(g, tree))
        ncand = len(self.candidates)
        nfaces = fs.count
        if ncand != nfaces - 1:
            raise InvariantViolation(
                f"expected {nfaces - 1} non-tree edges for {nfaces} faces, got {ncand}"
            )
        side_of = {}
        for fi, walk in enumerate(fs.walks):
            for de in walk:
                side_of[de] = fi
        # dual adjacency across non-tree edges only
        dual_adj: list[list[tuple[int, int]]] = [[] for _ in range(nfaces)]
        for ci, (u, v) in enumerate(self.candidates):
            f1, f2 = side_of[(u, v)], side_of[(v, u)]
            if f1 == f2:
                raise InvariantViolation(f"edge {(u, v)} borders one face twice")
            dual_adj[f1].append((f2, ci))
            dual_adj[f2].append((f1, ci))
        tin = [-1] * nfaces
        parent_face = [-1] * nfaces
        preorder: list[int] = []
        clock = 0
        stack: list[tuple[int, int]] = [(fs.outer, -1)]
        while stack:
            fi, par = stack.pop()
            if tin[fi] >= 0:
                continue
            parent_face[fi] = par
            tin[fi] = clock
            clock += 1
            preorder.append(fi)
            for fj, _ in dual_adj[fi]:
                if tin[fj] < 0:
                    stack.append((fj, fi))
        if clock != nfaces:
            raise InvariantViolation("duals of non-tree edges do not span the dual graph")
        # F-1 edges + spanning => the dual edges form a tree; each candidate's
        # child endpoint is the one visited later
        tout = list(tin)
        for fi in reversed(preorder):
            p = parent_face[fi]
            if p >= 0 and tout[fi] > tout[p]:
                tout[p] = tout[fi]
        child_face = [0] * ncand
        for ci, (u, v) in enumerate(self.candidates):
            f1, f2 = side_of[(u, v)], side_of[(v, u)]
            child_face[ci] = f1 if tin[f1] > tin[f2] else f2
        # canonical face per vertex: the smallest tin among incident faces
        face_of = [None] * n
        for fi, walk in enumerate(fs.walks):
            for u, _ in walk:
                if face_of[u] is None or tin[fi] < tin[face_of[u]]:
                    face_of[u] = fi
        perm = sorted(range(n), key=lambda v: (tin[face_of[v]], v))
        pos_of = [0] * n
        for p, v in enumerate(perm):
            pos_of[v] = p
        keys = np.array([tin[face_of[v]] for v in perm], dtype=np.int64)
        self.perm = np.array(perm, dtype=np.int64)
        self._pos_of = pos_of

        self.cycles: list[FundamentalCycle] = [
            fundamental_cycle(tree, e) for e in self.candidates
        ]
        lo = np.empty(ncand, dtype=np.int32)
        hi = np.empty(ncand, dtype=np.int32)
        for ci in range(ncand):
            cf = child_face[ci]
            lo[ci] = np.searchsorted(keys, tin[cf], side="left")
            hi[ci] = np.searchsorted(keys, tout[cf], side="right") - 1
        all_cand: list[int] = []
        all_vert: list[int] = []
        enc_cand: list[int] = []
        enc_vert: list[int] = []
        for ci, cyc in enumerate(self.cycles):
            for v in cyc.vertices:
                all_cand.append(ci)
                all_vert.append(v)
                if lo[ci] <= pos_of[v] <= hi[ci]:
                    enc_cand.append(ci)
                    enc_vert.append(v)
        self._lo = lo
        self._hi = hi
        self._all_cand = np.array(all_cand, dtype=np.int32)
        self._all_vert = np.array(all_vert, dtype=np.int32)
        self._enc_cand = np.array(enc_cand, dtype=np.int32)
        self._enc_vert = np.array(enc_vert, dtype=np.int32)

    @property
    def candidate_count(self) -> int:
        return len(self.candidates)

    def scan(self, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Per-candidate (inside, on-cycle, outside) weight totals."""
        w = np.asarray(weights, dtype=np.int64)
        pref = np.zeros(len(w) + 1, dtype=np.int64)
        np.cumsum(w[self.perm], out=pref[1:])
        inside, oncycle = _kernels.cycle_scan(
            pref,
            self._lo,
            self._hi,
            self._enc_cand,
            self._enc_vert,
            self._all_cand,
            self._all_vert,
            w,
            len(self.candidates),
        )
        outside = int(w.sum()) - inside - oncycle
        return inside, oncycle, outside

    def balanced_choice(self, weights: np.ndarray) -> int | None:
        """Smallest (interior weight, candidate id) among balanced candidates."""
        inside, _, outside = self.scan(weights)
        total = int(np.asarray(weights, dtype=np.int64).sum())
        ok = np.flatnonzero((3 * inside <= 2 * total) & (3 * outside <= 2 * total))
        if len(ok) == 0:
            return None
        return int(ok[np.argmin(inside[ok])])

    def inside_vertices(self, ci: int) -> frozenset[int]:
        span = self.perm[self._lo[ci] : self._hi[ci] + 1]
        return frozenset(int(v) for v in span) - self.cycles[ci].vertex_set


def find_layered_separator(
    tri: Triangulation,
    tree: BfsTree,
    layering: Layering,
    weights,
    index: CycleIndex | None = None,
) -> tuple[FundamentalCycle, Separation]:
    """A fundamental cycle whose sides each carry <= 2/3 of the total weight.

    Existence is a theorem for triangulations; failing to find one is an
    implementation bug and aborts loudly.
    """
    g = tri.graph
    n = g.vertex_count
    if n < 4:
        raise GraphError("separator search needs a triangulation on >= 4 vertices")
    w = np.zeros(n, dtype=np.int64)
    if isinstance(weights, dict):
        for v, x in weights.items():
            w[v] = x
    else:
        w[:] = np.asarray(weights, dtype=np.int64)
    if (w < 0).any():
        raise GraphError("weights must be non-negative")
    if int(w.sum()) == 0:
        raise GraphError("total weight must be positive")
    if index is None:
        index = CycleIndex(tri, tree)
    ci = index.balanced_choice(w)
    if ci is None:
        raise InvariantViolation(
            "no balanced fundamental cycle exists; this contradicts the planar "
            "separator theorem and indicates a bug upstream"
        )
    cyc = index.cycles[ci]
    inside = index.inside_vertices(ci)
    cset = cyc.vertex_set
    outside = frozenset(g.vertices()) - inside - cset
    sep = Separation(left=frozenset(inside | cset), right=frozenset(outside | cset))
    return cyc, sep


@dataclass(frozen=True)
class SeparatorNode:
    index: int
    depth: int  # root has depth 1
    parent: int  # -1 at the root
    children: tuple[int, ...]
    vertices: frozenset[int]  # vertices mapped to this node
    component: frozenset[int]  # the subproblem this node split (or holds, if leaf)
    is_leaf: bool
    closing_edge: Edge | None = None
    left_count: int = 0  # |inside of the cycle ∩ component|
    right_count: int = 0


@dataclass(frozen=True)
class SeparatorTree:
    nodes: tuple[SeparatorNode, ...]
    node_of_vertex: tuple[int, ...]
    ell: int

    @property
    def root(self) -> SeparatorNode:
        return self.nodes[0]

    @property
    def height(self) -> int:
        return max(nd.depth for nd in self.nodes)

    def depths(self) -> list[list[SeparatorNode]]:
        out: list[list[SeparatorNode]] = [[] for _ in range(self.height)]
        for nd in self.nodes:
            out[nd.depth - 1].append(nd)
        return out


def build_separator_tree(
    tri: Triangulation,
    layering: Layering,
    ell: int = 2,
    tree: BfsTree | None = None,
    index: CycleIndex | None = None,
) -> SeparatorTree:
    """Recursive layered-separator decomposition.

    A component with <= ell vertices per layer becomes a leaf owning all of
    them; otherwise the balanced fundamental cycle (computed on the whole
    triangulation with the component's indicator weights) contributes its
    component vertices to the node, and the remainder's connected components
    recurse. Every certificate is checked during the build.
    """
    g = tri.graph
    n = g.vertex_count
    if ell < 2:
        raise GraphError("ell >= 2 required (fundamental cycles carry 2 vertices per layer)")
    if tree is None:
        root = layering.layer_of.index(0)
        tree, lay2 = bfs_tree(tri, root)
        if lay2.layer_of != layering.layer_of:
            raise GraphError("layering is not the BFS layering of the triangulation")
    if index is None and n >= 4:
        index = CycleIndex(tri, tree)

    nodes: list[SeparatorNode | None] = []
    node_of_vertex = [-1] * n

    def visit(comp: frozenset[int], depth: int, parent: int) -> int:
        me = len(nodes)
        nodes.append(None)  # reserved; filled below
        counts = Counter(layering.layer_of[v] for v in comp)
        if max(counts.values()) <= ell:
            for v in comp:
                node_of_vertex[v] = me
            nodes[me] = SeparatorNode(
                index=me, depth=depth, parent=parent, children=(),
                vertices=comp, component=comp, is_leaf=True,
            )
            return me
        w = np.zeros(n, dtype=np.int64)
        w[list(comp)] = 1
        cyc, sep = find_layered_separator(tri, tree, layering, w, index)
        owned = cyc.vertex_set & comp
        if not owned:
            raise InvariantViolation("balanced cycle misses the weighted component")
        inside_comp = sep.left_only & comp
        outside_comp = sep.right_only & comp
        if 3 * len(inside_comp) > 2 * len(comp) or 3 * len(outside_comp) > 2 * len(comp):
            raise InvariantViolation("side exceeds 2/3 of the subproblem")
        adj = g.adjacency
        for u in inside_comp:
            for x in adj[u]:
                if x in outside_comp:
                    raise InvariantViolation(
                        f"cycle fails to separate the component: edge {(u, x)}"
                    )
        for v in owned:
            node_of_vertex[v] = me
        kids = []
        for sub in connected_components(g, within=comp - owned):
            if not (sub <= inside_comp or sub <= outside_comp):
                raise InvariantViolation("remainder component straddles the cycle")
            if 3 * len(sub) > 2 * len(comp):
                raise InvariantViolation("child subproblem exceeds 2/3 of the parent")
            kids.append(visit(sub, depth + 1, me))
        nodes[me] = SeparatorNode(
            index=me, depth=depth, parent=parent, children=tuple(kids),
            vertices=frozenset(owned), component=comp, is_leaf=False,
            closing_edge=cyc.closing_edge,
            left_count=len(inside_comp), right_count=len(outside_comp),
        )
        return me

    visit(frozenset(g.vertices()), 1, -1)
    if any(nd is None for nd in nodes) or min(node_of_vertex) < 0:
        raise InvariantViolation("separator tree left vertices unassigned")
    st = SeparatorTree(nodes=tuple(nodes), node_of_vertex=tuple(node_of_vertex), ell=ell)
    bound = ceil_log_three_halves(n) + 1
    if st.height > bound:
        raise InvariantViolation(f"separator tree height {st.height} exceeds bound {bound}")
    return st


def validate_separator_tree(
    g: Graph,
    layering: Layering,
    st: SeparatorTree,
    exact_components: bool = False,
) -> None:
    """Re-check every separator-tree invariant against a graph.

    With ``exact_components`` the children must be exactly the connected
    components of the parent's remainder (requires the graph the tree was
    built on); without it, the checks are restriction-safe and hold for any
    subgraph on the same vertices (used when re-validating documents).
    """
    n = g.vertex_count
    if len(st.node_of_vertex) != n:
        raise InvariantViolation("vertex-node map has wrong length")
    seen: set[int] = set()
    for nd in st.nodes:
        for v in nd.vertices:
            if v in seen:
                raise InvariantViolation(f"vertex {v} owned by two nodes")
            seen.add(v)
            if st.node_of_vertex[v] != nd.index:
                raise InvariantViolation(f"vertex_node inconsistent at {v}")
        counts = Counter(layering.layer_of[v] for v in nd.vertices)
        if counts and max(counts.values()) > st.ell:
            raise InvariantViolation(
                f"node {nd.index} holds more than ell={st.ell} vertices in a layer"
            )
        if nd.parent >= 0 and st.nodes[nd.parent].depth + 1 != nd.depth:
            raise InvariantViolation("child depth is not parent depth + 1")
    if seen != set(g.vertices()):
        raise InvariantViolation("node vertex sets do not partition V")
    if st.height > ceil_log_three_halves(n) + 1 and n >= 1:
        raise InvariantViolation("height bound violated")
    for nd in st.nodes:
        if nd.is_leaf:
            continue
        subs = [st.nodes[c].component for c in nd.children]
        for i, a in enumerate(subs):
            if 3 * len(a) > 2 * len(nd.component):
                raise InvariantViolation("child subproblem exceeds 2/3 of the parent")
            for b in subs[i + 1 :]:
                if a & b:
                    raise InvariantViolation("sibling subproblems overlap")
        whole = set(nd.vertices)
        for a in subs:
            whole |= a
        if whole != set(nd.component):
            raise InvariantViolation("node vertices + child subproblems != component")
        where = {}
        for ci, a in zip(nd.children, subs):
            for v in a:
                where[v] = ci
        for u, v in g.edges:
            if u in where and v in where and where[u] != where[v]:
                raise InvariantViolation(
                    f"edge {(u, v)} joins two children of node {nd.index}"
                )
        if exact_components:
            rest = frozenset(nd.component) - nd.vertices
            expect = connected_components(g, within=rest)
            got = sorted(subs, key=min) if subs else []
            if [set(c) for c in expect] != [set(c) for c in got]:
                raise InvariantViolation("children are not the remainder's components")
