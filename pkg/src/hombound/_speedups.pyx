# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled kernels: GF(p) boundary-matrix rank and DSATUR k-coloring search.

Mirrors hombound._kernels_py exactly (same pivoting, same tie-breaking) so
results are identical across backends.
"""

import numpy as np

from libcpp.vector cimport vector
from libcpp.queue cimport priority_queue

BACKEND = "c"

ctypedef long long i64
ctypedef unsigned long long u64


cdef inline i64 _modpow(i64 base, i64 exp, i64 p) noexcept:
    cdef i64 result = 1
    base %= p
    while exp > 0:
        if exp & 1:
            result = (result * base) % p
        base = (base * base) % p
        exp >>= 1
    return result


def boundary_rank(n_rows, indptr_in, rows_in, vals_in, p_in):
    """Rank over GF(p) of a sparse matrix in compressed-column form."""
    cdef i64 p = int(p_in)
    cdef i64 nr = int(n_rows)
    indptr_a = np.ascontiguousarray(indptr_in, dtype=np.int64)
    rows_a = np.ascontiguousarray(rows_in, dtype=np.int64)
    vals_a = np.ascontiguousarray(vals_in, dtype=np.int64)
    cdef i64[::1] indptr = indptr_a
    cdef i64[::1] rows = rows_a
    cdef i64[::1] vals = vals_a

    cdef Py_ssize_t ncols = indptr.shape[0] - 1
    w_a = np.zeros(nr, dtype=np.int64)
    por_a = np.full(nr, -1, dtype=np.int64)
    cdef i64[::1] w = w_a
    cdef i64[::1] por = por_a  # row -> pivot id, -1 if none

    cdef vector[i64] pool_rows
    cdef vector[i64] pool_vals
    cdef vector[i64] piv_off
    cdef vector[i64] piv_end
    cdef vector[i64] touched
    cdef priority_queue[i64] heap  # max-heap of negated rows = min-heap of rows

    cdef i64 rank = 0
    cdef Py_ssize_t j, t
    cdef i64 r, v, f, nv, pid, a, inv

    for j in range(ncols):
        for t in range(indptr[j], indptr[j + 1]):
            v = vals[t] % p
            if v < 0:
                v += p
            if v == 0:
                continue
            r = rows[t]
            if w[r] == 0:
                heap.push(-r)
                touched.push_back(r)
            w[r] = (w[r] + v) % p
        while not heap.empty():
            r = -heap.top()
            if w[r] == 0:
                heap.pop()
                continue
            pid = por[r]
            if pid < 0:
                break  # r is the minimum nonzero row and has no pivot
            heap.pop()
            f = w[r]
            w[r] = 0
            for t in range(piv_off[pid], piv_end[pid]):
                a = pool_rows[t]
                nv = (w[a] - f * pool_vals[t]) % p
                if nv < 0:
                    nv += p
                if w[a] == 0 and nv != 0:
                    heap.push(-a)
                    touched.push_back(a)
                w[a] = nv
        if not heap.empty():
            r = -heap.top()
            inv = _modpow(w[r], p - 2, p)
            piv_off.push_back(<i64> pool_rows.size())
            for t in range(<Py_ssize_t> touched.size()):
                a = touched[t]
                # touched can list a row twice (nonzero -> zero -> nonzero);
                # zeroing as we collect dedupes the pool
                if a != r and w[a] != 0:
                    pool_rows.push_back(a)
                    pool_vals.push_back((w[a] * inv) % p)
                    w[a] = 0
            piv_end.push_back(<i64> pool_rows.size())
            por[r] = rank
            rank += 1
            w[r] = 0
        for t in range(<Py_ssize_t> touched.size()):
            w[touched[t]] = 0
        touched.clear()
        while not heap.empty():
            heap.pop()
    return int(rank)


cdef struct CState:
    Py_ssize_t n
    Py_ssize_t W
    i64 k
    u64 full
    u64* adj
    i64* color
    u64* forbid
    i64* sat
    i64* deg  # degree into the uncolored subgraph, updated on assign/undo
    i64 nodes
    i64 cap


cdef inline Py_ssize_t _apply(CState* s, Py_ssize_t v, i64 c,
                              vector[i64]* changed, bint* dead) noexcept:
    cdef u64 bit = (<u64> 1) << c
    cdef u64 m
    cdef Py_ssize_t w, u
    s.color[v] = c
    dead[0] = 0
    for w in range(s.W):
        m = s.adj[v * s.W + w]
        while m:
            u = w * 64 + __builtin_ctzll(m)
            m &= m - 1
            if s.color[u] < 0:
                s.deg[u] -= 1
                if not (s.forbid[u] & bit):
                    s.forbid[u] |= bit
                    s.sat[u] += 1
                    changed[0].push_back(u)
                    if s.forbid[u] == s.full:
                        dead[0] = 1
    return 0


cdef inline void _undo(CState* s, Py_ssize_t v, i64 c, vector[i64]* changed,
                       Py_ssize_t mark) noexcept:
    cdef u64 bit = ~((<u64> 1) << c)
    cdef u64 m
    cdef Py_ssize_t t, u, w
    s.color[v] = -1
    for w in range(s.W):
        m = s.adj[v * s.W + w]
        while m:
            u = w * 64 + __builtin_ctzll(m)
            m &= m - 1
            if s.color[u] < 0:
                s.deg[u] += 1
    for t in range(mark, <Py_ssize_t> changed[0].size()):
        u = changed[0][t]
        s.forbid[u] &= bit
        s.sat[u] -= 1
    changed[0].resize(mark)


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef int _search(CState* s, Py_ssize_t uncolored, i64 max_used,
                 vector[i64]* changed) noexcept:
    cdef Py_ssize_t best_v = -1, v
    cdef i64 bs = -1, bd = -1, ss, lim, c
    cdef u64 cand, low
    cdef bint dead
    cdef Py_ssize_t mark
    cdef int res
    if uncolored == 0:
        return 1
    s.nodes += 1
    if s.nodes > s.cap:
        return -1
    for v in range(s.n):
        if s.color[v] < 0:
            ss = s.sat[v]
            if ss > bs or (ss == bs and s.deg[v] > bd):
                best_v = v
                bs = ss
                bd = s.deg[v]
    lim = max_used + 2
    if lim > s.k:
        lim = s.k
    cand = (~s.forbid[best_v]) & (((<u64> 1) << lim) - 1)
    while cand:
        c = __builtin_ctzll(cand)
        cand &= cand - 1
        mark = changed[0].size()
        _apply(s, best_v, c, changed, &dead)
        if not dead:
            res = _search(s, uncolored - 1,
                          max_used if c <= max_used else c, changed)
            if res == 1:
                return 1
            if res == -1:
                _undo(s, best_v, c, changed, mark)
                return -1
        _undo(s, best_v, c, changed, mark)
    return 0


def find_k_coloring(n_in, adj_in, k_in, max_nodes, pre_v, pre_c):
    """DSATUR branch and bound; see the pure twin for the full contract."""
    cdef Py_ssize_t n = int(n_in)
    cdef i64 k = int(k_in)
    if n == 0:
        return 1, [], 0
    if k <= 0:
        return 0, None, 0
    if k > 63:
        raise ValueError("kernel supports k <= 63")

    adj_a = np.ascontiguousarray(adj_in, dtype=np.uint64)
    cdef u64[:, ::1] adj = adj_a
    cdef Py_ssize_t W = adj.shape[1]

    color_a = np.full(n, -1, dtype=np.int64)
    forbid_a = np.zeros(n, dtype=np.uint64)
    sat_a = np.zeros(n, dtype=np.int64)
    deg_a = np.zeros(n, dtype=np.int64)
    cdef i64[::1] color = color_a
    cdef u64[::1] forbid = forbid_a
    cdef i64[::1] sat = sat_a
    cdef i64[::1] deg = deg_a

    cdef Py_ssize_t v, w
    cdef u64 m
    cdef i64 d
    for v in range(n):
        d = 0
        for w in range(W):
            m = adj[v, w]
            while m:
                m &= m - 1
                d += 1
        deg[v] = d

    cdef CState s
    s.n = n
    s.W = W
    s.k = k
    s.full = (((<u64> 1) << k) - 1)
    s.adj = &adj[0, 0]
    s.color = &color[0]
    s.forbid = &forbid[0]
    s.sat = &sat[0]
    s.deg = &deg[0]
    s.nodes = 0
    s.cap = int(max_nodes)

    cdef vector[i64] changed
    cdef bint dead
    cdef i64 max_used = -1
    cdef Py_ssize_t uncolored = n
    cdef i64 c
    pre_v = list(pre_v)
    pre_c = list(pre_c)
    for i in range(len(pre_v)):
        v = int(pre_v[i])
        c = int(pre_c[i])
        if c >= k or color[v] >= 0 or (forbid[v] >> c) & 1:
            return 0, None, 0
        _apply(&s, v, c, &changed, &dead)
        uncolored -= 1
        if c > max_used:
            max_used = c
        if dead and uncolored > 0:
            return 0, None, 0

    cdef int status = _search(&s, uncolored, max_used, &changed)
    if status == 1:
        return 1, [int(color[v]) for v in range(n)], int(s.nodes)
    return status, None, int(s.nodes)
