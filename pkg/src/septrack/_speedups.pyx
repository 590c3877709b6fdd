# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the `_fallback` kernels. Same contracts, same results.

Exact int64 arithmetic under the caller-guaranteed envelope
max|coord| <= 2**19 (largest intermediate: 3 * (2*2**19)**3 < 2**63).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

ENVELOPE = 1 << 19

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32


def cycle_scan(pref, lo, hi, enc_cand, enc_vert, all_cand, all_vert, weights, ncand):
    cdef i64[::1] pref_v = np.ascontiguousarray(pref, dtype=np.int64)
    cdef i32[::1] lo_v = np.ascontiguousarray(lo, dtype=np.int32)
    cdef i32[::1] hi_v = np.ascontiguousarray(hi, dtype=np.int32)
    cdef i32[::1] ec = np.ascontiguousarray(enc_cand, dtype=np.int32)
    cdef i32[::1] ev = np.ascontiguousarray(enc_vert, dtype=np.int32)
    cdef i32[::1] ac = np.ascontiguousarray(all_cand, dtype=np.int32)
    cdef i32[::1] av = np.ascontiguousarray(all_vert, dtype=np.int32)
    cdef i64[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    inside_arr = np.empty(ncand, dtype=np.int64)
    oncycle_arr = np.zeros(ncand, dtype=np.int64)
    cdef i64[::1] inside = inside_arr
    cdef i64[::1] oncycle = oncycle_arr
    cdef Py_ssize_t c, j
    for c in range(ncand):
        inside[c] = pref_v[hi_v[c] + 1] - pref_v[lo_v[c]]
    for j in range(ec.shape[0]):
        inside[ec[j]] -= w[ev[j]]
    for j in range(ac.shape[0]):
        oncycle[ac[j]] += w[av[j]]
    return inside_arr, oncycle_arr


cdef inline bint _on_open_segment(i64 px, i64 py, i64 pz,
                                  i64 ax, i64 ay, i64 az,
                                  i64 bx, i64 by, i64 bz) noexcept nogil:
    cdef i64 rx = bx - ax, ry = by - ay, rz = bz - az
    cdef i64 ux = px - ax, uy = py - ay, uz = pz - az
    if uy * rz - uz * ry != 0 or uz * rx - ux * rz != 0 or ux * ry - uy * rx != 0:
        return 0
    cdef i64 t = ux * rx + uy * ry + uz * rz
    cdef i64 rr = rx * rx + ry * ry + rz * rz
    return 0 < t < rr


cdef inline int _pair_kind(i64 ax, i64 ay, i64 az, i64 bx, i64 by, i64 bz,
                           i64 cx, i64 cy, i64 cz, i64 dx, i64 dy, i64 dz) noexcept nogil:
    """0 none, 1 crossing, 2 overlap; endpoints pairwise distinct."""
    cdef i64 rx = bx - ax, ry = by - ay, rz = bz - az
    cdef i64 qx = dx - cx, qy = dy - cy, qz = dz - cz
    cdef i64 nx = ry * qz - rz * qy
    cdef i64 ny = rz * qx - rx * qz
    cdef i64 nz = rx * qy - ry * qx
    cdef i64 ex = cx - ax, ey = cy - ay, ez = cz - az
    cdef i64 c1, c2, c3, rr, tc, td, lo, hi, fx, fy, fz
    cdef i64 sa, sb, sc, sd
    cdef i64 anx, any_, anz
    cdef int i1, i2
    if nx == 0 and ny == 0 and nz == 0:
        c1 = ey * rz - ez * ry
        c2 = ez * rx - ex * rz
        c3 = ex * ry - ey * rx
        if c1 != 0 or c2 != 0 or c3 != 0:
            return 0
        rr = rx * rx + ry * ry + rz * rz
        tc = ex * rx + ey * ry + ez * rz
        fx = dx - ax
        fy = dy - ay
        fz = dz - az
        td = fx * rx + fy * ry + fz * rz
        lo = tc if tc < td else td
        hi = td if tc < td else tc
        if lo < 0:
            lo = 0
        if hi > rr:
            hi = rr
        return 2 if lo < hi else 0
    if ex * nx + ey * ny + ez * nz != 0:
        return 0  # skew
    anx = nx if nx >= 0 else -nx
    any_ = ny if ny >= 0 else -ny
    anz = nz if nz >= 0 else -nz
    if anx >= any_ and anx >= anz:
        i1 = 1
        i2 = 2
    elif any_ >= anz:
        i1 = 0
        i2 = 2
    else:
        i1 = 0
        i2 = 1
    cdef i64 p[3]
    cdef i64 pb[3]
    cdef i64 pc[3]
    cdef i64 pd[3]
    p[0] = ax
    p[1] = ay
    p[2] = az
    pb[0] = bx
    pb[1] = by
    pb[2] = bz
    pc[0] = cx
    pc[1] = cy
    pc[2] = cz
    pd[0] = dx
    pd[1] = dy
    pd[2] = dz
    sa = (pd[i1] - pc[i1]) * (p[i2] - pc[i2]) - (pd[i2] - pc[i2]) * (p[i1] - pc[i1])
    sb = (pd[i1] - pc[i1]) * (pb[i2] - pc[i2]) - (pd[i2] - pc[i2]) * (pb[i1] - pc[i1])
    sc = (pb[i1] - p[i1]) * (pc[i2] - p[i2]) - (pb[i2] - p[i2]) * (pc[i1] - p[i1])
    sd = (pb[i1] - p[i1]) * (pd[i2] - p[i2]) - (pb[i2] - p[i2]) * (pd[i1] - p[i1])
    if sa != 0 and sb != 0 and sc != 0 and sd != 0:
        if ((sa > 0) != (sb > 0)) and ((sc > 0) != (sd > 0)):
            return 1
    return 0


def drawing_conflicts(coords, edges):
    P_arr = np.ascontiguousarray(coords, dtype=np.int64)
    E_arr = np.ascontiguousarray(np.asarray(edges, dtype=np.int64).reshape(-1, 2))
    if P_arr.size and np.abs(P_arr).max() > ENVELOPE:
        raise AssertionError("outside int64 envelope")
    cdef i64[:, ::1] P = P_arr
    cdef i64[:, ::1] E = E_arr
    cdef Py_ssize_t n = P.shape[0], m = E.shape[0]
    out = []
    if m == 0:
        return out
    lo_arr = np.minimum(P_arr[E_arr[:, 0]], P_arr[E_arr[:, 1]])
    hi_arr = np.maximum(P_arr[E_arr[:, 0]], P_arr[E_arr[:, 1]])
    cdef i64[:, ::1] lo = np.ascontiguousarray(lo_arr)
    cdef i64[:, ::1] hi = np.ascontiguousarray(hi_arr)
    cdef Py_ssize_t ei, p, i, j
    cdef i64 u, v, x, y, w_, pp, qq
    cdef int kind

    for ei in range(m):
        u = E[ei, 0]
        v = E[ei, 1]
        for p in range(n):
            if p == u or p == v:
                continue
            if (P[p, 0] < lo[ei, 0] or P[p, 0] > hi[ei, 0]
                    or P[p, 1] < lo[ei, 1] or P[p, 1] > hi[ei, 1]
                    or P[p, 2] < lo[ei, 2] or P[p, 2] > hi[ei, 2]):
                continue
            if _on_open_segment(P[p, 0], P[p, 1], P[p, 2],
                                P[u, 0], P[u, 1], P[u, 2],
                                P[v, 0], P[v, 1], P[v, 2]):
                out.append(("vertex_on_edge", int(p), int(ei)))

    for i in range(m - 1):
        u = E[i, 0]
        v = E[i, 1]
        for j in range(i + 1, m):
            if (lo[j, 0] > hi[i, 0] or hi[j, 0] < lo[i, 0]
                    or lo[j, 1] > hi[i, 1] or hi[j, 1] < lo[i, 1]
                    or lo[j, 2] > hi[i, 2] or hi[j, 2] < lo[i, 2]):
                continue
            x = E[j, 0]
            y = E[j, 1]
            if x == u or x == v or y == u or y == v:
                if x == u:
                    w_ = u; pp = v; qq = y
                elif x == v:
                    w_ = v; pp = u; qq = y
                elif y == u:
                    w_ = u; pp = v; qq = x
                else:
                    w_ = v; pp = u; qq = x
                # overlap beyond the shared endpoint: collinear, same direction
                if ((P[pp, 1] - P[w_, 1]) * (P[qq, 2] - P[w_, 2]) == (P[pp, 2] - P[w_, 2]) * (P[qq, 1] - P[w_, 1])
                        and (P[pp, 2] - P[w_, 2]) * (P[qq, 0] - P[w_, 0]) == (P[pp, 0] - P[w_, 0]) * (P[qq, 2] - P[w_, 2])
                        and (P[pp, 0] - P[w_, 0]) * (P[qq, 1] - P[w_, 1]) == (P[pp, 1] - P[w_, 1]) * (P[qq, 0] - P[w_, 0])
                        and (P[pp, 0] - P[w_, 0]) * (P[qq, 0] - P[w_, 0])
                        + (P[pp, 1] - P[w_, 1]) * (P[qq, 1] - P[w_, 1])
                        + (P[pp, 2] - P[w_, 2]) * (P[qq, 2] - P[w_, 2]) > 0):
                    out.append(("overlap", int(i), int(j)))
                continue
            kind = _pair_kind(P[u, 0], P[u, 1], P[u, 2], P[v, 0], P[v, 1], P[v, 2],
                              P[x, 0], P[x, 1], P[x, 2], P[y, 0], P[y, 1], P[y, 2])
            if kind == 1:
                out.append(("crossing", int(i), int(j)))
            elif kind == 2:
                out.append(("overlap", int(i), int(j)))
    return out


def interleave_conflict(b, a, zu, zv, inc_other, inc_zc, inc_zd, col_ptr, col_fill):
    cdef i64[::1] other = inc_other
    cdef i64[::1] zcv = inc_zc
    cdef i64[::1] zdv = inc_zd
    cdef i64[::1] ptr = col_ptr
    cdef i64[::1] fill = col_fill
    cdef i64 bb = b, aa = a, zuu = zu, zvv = zv
    cdef i64 c, d, zc, zd, den, tn, sn, lhs, rhs
    cdef Py_ssize_t s, e, k
    for c in range(bb + 1, aa):
        s = ptr[c]
        e = fill[c]
        for k in range(s, e):
            d = other[k]
            if bb <= d <= aa:
                continue
            zc = zcv[k]
            zd = zdv[k]
            den = (aa - bb) * (d * d - c * c) - (aa * aa - bb * bb) * (d - c)
            tn = (c - bb) * (d * d - c * c) - (c * c - bb * bb) * (d - c)
            sn = (c - bb) * (aa * aa - bb * bb) - (c * c - bb * bb) * (aa - bb)
            lhs = zuu * den + tn * (zvv - zuu)
            rhs = zc * den + sn * (zd - zc)
            if lhs == rhs:
                return k
    return -1
