"""Pure NumPy implementations of the hot kernels.

Selected by ``septrack._kernels`` when the compiled extension is unavailable
(or when SEPTRACK_FORCE_PURE is set). Both backends implement the same
contracts and must return bit-identical results; tests compare them.

All geometry here is exact integer arithmetic. Callers guarantee the int64
envelope max|coord| <= 2**19, under which every intermediate product fits
int64 (largest term: 3 * (2*2**19)**3 < 2**63).
"""

from __future__ import annotations

import numpy as np

ENVELOPE = 1 << 19


# ---------------------------------------------------------------------------
# exact scalar geometry (python ints, overflow-free; also used by the big-int
# fallback path in drawing.py for out-of-envelope inputs)
# ---------------------------------------------------------------------------


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def point_on_open_segment(p, a, b) -> bool:
    """True when p lies strictly inside segment [a, b] (collinear and between)."""
    ap = _sub(p, a)
    r = _sub(b, a)
    if _cross(ap, r) != (0, 0, 0):
        return False
    t = _dot(ap, r)
    return 0 < t < _dot(r, r)


def segment_pair_kind(a, b, c, d) -> str | None:
    """Classify two closed segments with four pairwise-distinct endpoints.

    'crossing': proper transversal intersection (interiors cross),
    'overlap': collinear intersection of positive length,
    None: disjoint, skew, or touching only at a point that coincides with an
    endpoint (those configurations are reported by the duplicate-position and
    vertex-on-edge checks, not here).
    """
    r = _sub(b, a)
    q = _sub(d, c)
    n = _cross(r, q)
    if n == (0, 0, 0):
        if _cross(_sub(c, a), r) != (0, 0, 0):
            return None
        rr = _dot(r, r)
        tc = _dot(_sub(c, a), r)
        td = _dot(_sub(d, a), r)
        lo = max(0, min(tc, td))
        hi = min(rr, max(tc, td))
        return "overlap" if lo < hi else None
    if _dot(_sub(c, a), n) != 0:
        return None  # skew
    k = max(range(3), key=lambda i: abs(n[i]))
    i1, i2 = [i for i in range(3) if i != k]

    def orient(p, s, t):
        return (s[i1] - p[i1]) * (t[i2] - p[i2]) - (s[i2] - p[i2]) * (t[i1] - p[i1])

    sa = orient(c, d, a)
    sb = orient(c, d, b)
    sc = orient(a, b, c)
    sd = orient(a, b, d)
    if sa != 0 and sb != 0 and sc != 0 and sd != 0 and (sa > 0) != (sb > 0) and (sc > 0) != (sd > 0):
        return "crossing"
    return None


def shared_endpoint_overlap(w, p, q) -> bool:
    """Segments [w,p] and [w,q]: True when they overlap beyond the shared w."""
    wp = _sub(p, w)
    wq = _sub(q, w)
    return _cross(wp, wq) == (0, 0, 0) and _dot(wp, wq) > 0


# ---------------------------------------------------------------------------
# kernel 1: layered-separator candidate scan
# ---------------------------------------------------------------------------


def cycle_scan(pref, lo, hi, enc_cand, enc_vert, all_cand, all_vert, weights, ncand):
    """Per-candidate interior weight and on-cycle weight.

    pref[k] is the exclusive prefix sum of face weights in Euler order, so the
    faces enclosed by candidate c carry total pref[hi[c]+1] - pref[lo[c]].
    Cycle vertices whose canonical face falls inside the interval were counted
    as interior and are subtracted back (entries pre-filtered in enc_*).
    """
    inside = pref[hi.astype(np.int64) + 1] - pref[lo.astype(np.int64)]
    corr = np.zeros(ncand, dtype=np.int64)
    if len(enc_cand):
        np.add.at(corr, enc_cand, weights[enc_vert])
    oncycle = np.zeros(ncand, dtype=np.int64)
    if len(all_cand):
        np.add.at(oncycle, all_cand, weights[all_vert])
    return inside - corr, oncycle


# ---------------------------------------------------------------------------
# kernel 2: exhaustive exact drawing verification
# ---------------------------------------------------------------------------


def drawing_conflicts(coords, edges):
    """All vertex-on-edge and edge-pair violations of a 3D grid drawing.

    Returns a list of ("vertex_on_edge", vertex, edge_index) and
    ("crossing" | "overlap", edge_index_i, edge_index_j) tuples, ordered by
    edge index then inner index. Duplicate-position detection is the caller's
    job. Exhaustive up to exact bounding-box rejection.
    """
    coords = np.asarray(coords, dtype=np.int64)
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    assert np.abs(coords).max(initial=0) <= ENVELOPE, "outside int64 envelope"
    out = []
    m = len(edges)
    if m == 0:
        return out
    A = coords[edges[:, 0]]
    B = coords[edges[:, 1]]
    lo = np.minimum(A, B)
    hi = np.maximum(A, B)

    for ei in range(m):
        u, v = int(edges[ei, 0]), int(edges[ei, 1])
        inbox = np.all((coords >= lo[ei]) & (coords <= hi[ei]), axis=1)
        inbox[u] = False
        inbox[v] = False
        cand = np.nonzero(inbox)[0]
        if cand.size:
            r = B[ei] - A[ei]
            ap = coords[cand] - A[ei]
            coll = np.all(np.cross(ap, r) == 0, axis=1)
            sub = cand[coll]
            if sub.size:
                t = (coords[sub] - A[ei]) @ r
                rr = int(r @ r)
                hits = sub[(t > 0) & (t < rr)]
                for p in hits:
                    out.append(("vertex_on_edge", int(p), ei))

    eu = edges[:, 0]
    ev = edges[:, 1]
    for i in range(m - 1):
        a, b = A[i], B[i]
        js = np.arange(i + 1, m)
        boxmask = np.all((lo[js] <= hi[i]) & (hi[js] >= lo[i]), axis=1)
        js = js[boxmask]
        if js.size == 0:
            continue
        ui, vi = int(eu[i]), int(ev[i])
        shared = (eu[js] == ui) | (eu[js] == vi) | (ev[js] == ui) | (ev[js] == vi)
        found: list[tuple[int, str]] = []

        sjs = js[shared]
        for j in sjs:
            x, y = int(eu[j]), int(ev[j])
            # resolve the shared vertex w and the two free endpoints p, q
            if x == ui:
                w, p, q = ui, vi, y
            elif x == vi:
                w, p, q = vi, ui, y
            elif y == ui:
                w, p, q = ui, vi, x
            else:
                w, p, q = vi, ui, x
            cw = tuple(int(t) for t in coords[w])
            if shared_endpoint_overlap(cw, tuple(int(t) for t in coords[p]), tuple(int(t) for t in coords[q])):
                found.append((int(j), "overlap"))

        djs = js[~shared]
        if djs.size:
            C = A[djs]
            D = B[djs]
            r = b - a
            q = D - C
            nrm = np.cross(r, q)  # per row; only zero-tests and one dot below
            nonpar = np.any(nrm != 0, axis=1)
            cop = np.einsum("ij,ij->i", C - a, nrm) == 0
            exam = djs[(~nonpar) | (nonpar & cop)]
            ta = tuple(int(t) for t in a)
            tb = tuple(int(t) for t in b)
            for j in exam:
                kind = segment_pair_kind(
                    ta,
                    tb,
                    tuple(int(t) for t in A[j]),
                    tuple(int(t) for t in B[j]),
                )
                if kind is not None:
                    found.append((int(j), kind))
        for j, kind in sorted(found):
            out.append((kind, i, j))
    return out


# ---------------------------------------------------------------------------
# kernel 3: greedy-z interleaving conflict probe
# ---------------------------------------------------------------------------


def interleave_conflict(b, a, zu, zv, inc_other, inc_zc, inc_zd, col_ptr, col_fill):
    """First placed edge that would cross chord (b -> a) at heights (zu, zv).

    Placed edges are indexed per column: entries col_ptr[c]..col_fill[c] hold
    edges incident to column c (other endpoint inc_other, z at c inc_zc, z at
    the other end inc_zd). Only edges with one endpoint strictly inside (b, a)
    and the other strictly outside can cross; chords of the moment curve with
    nested or shared column pairs never do. Returns a flat entry index, or -1.
    """
    for c in range(b + 1, a):
        s, e = int(col_ptr[c]), int(col_fill[c])
        if s == e:
            continue
        d = inc_other[s:e]
        mask = (d < b) | (d > a)
        if not mask.any():
            continue
        idx = np.nonzero(mask)[0]
        dd = d[idx].astype(np.int64)
        zc = inc_zc[s:e][idx].astype(np.int64)
        zd = inc_zd[s:e][idx].astype(np.int64)
        # chords A=(b,b^2) -> B=(a,a^2) and C=(c,c^2) -> D=(d,d^2); they cross
        # properly in xy (columns interleave), so a 3D crossing is exactly
        # z-equality at the intersection point, compared with denominators.
        den = (a - b) * (dd * dd - c * c) - (a * a - b * b) * (dd - c)
        tn = (c - b) * (dd * dd - c * c) - (c * c - b * b) * (dd - c)
        sn = (c - b) * (a * a - b * b) - (c * c - b * b) * (a - b)
        lhs = zu * den + tn * (zv - zu)
        rhs = zc * den + sn * (zd - zc)
        eq = lhs == rhs
        if eq.any():
            return s + int(idx[int(np.argmax(eq))])
    return -1
