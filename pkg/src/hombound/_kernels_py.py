"""Pure-Python kernels.

`hombound._speedups` (Cython) exposes the same two entry points with identical
semantics; `hombound.kernels` picks one of the two at import time. Both must
make exactly the same tie-breaking decisions so that results are deterministic
regardless of backend.
"""

from __future__ import annotations

import sys

BACKEND = "python"


def _rank_gf2(indptr, rows) -> int:
    # Columns as int bitmasks; reduce at the lowest set bit, echelon-style.
    pivots: dict[int, int] = {}
    rank = 0
    for j in range(len(indptr) - 1):
        m = 0
        for t in range(indptr[j], indptr[j + 1]):
            m ^= 1 << rows[t]
        while m:
            low = (m & -m).bit_length() - 1
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = m
                rank += 1
                break
            m ^= piv
    return rank


def boundary_rank(n_rows, indptr, rows, vals, p) -> int:
    """Rank over GF(p) of a sparse matrix in compressed-column form.

    Column reduction with pivots keyed by minimum row index: subtracting a
    pivot strictly raises a column's minimum nonzero row, so every column
    either empties out or contributes exactly one new pivot.
    """
    p = int(p)
    indptr = [int(x) for x in indptr]
    rows = [int(x) for x in rows]
    if p == 2:
        return _rank_gf2(indptr, rows)
    vals = [int(x) for x in vals]
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for j in range(len(indptr) - 1):
        col: dict[int, int] = {}
        for t in range(indptr[j], indptr[j + 1]):
            v = vals[t] % p
            if not v:
                continue
            r = rows[t]
            nv = (col.get(r, 0) + v) % p
            if nv:
                col[r] = nv
            else:
                col.pop(r, None)
        while col:
            r = min(col)
            piv = pivots.get(r)
            if piv is None:
                inv = pow(col[r], p - 2, p)
                pivots[r] = {rr: (vv * inv) % p for rr, vv in col.items() if rr != r}
                rank += 1
                break
            f = col.pop(r)
            for rr, vv in piv.items():
                nv = (col.get(rr, 0) - f * vv) % p
                if nv:
                    col[rr] = nv
                else:
                    col.pop(rr, None)
    return rank


def find_k_coloring(n, adj, k, max_nodes, pre_v, pre_c):
    """DSATUR-ordered branch and bound search for a proper k-coloring.

    adj: (n, W) array of uint64 words; bit u of row v set when u ~ v.
    pre_v/pre_c: vertices preassigned colors (clique seed, symmetry breaking).
    Returns (status, colors, nodes): status 1 = found, 0 = none exists,
    -1 = node budget exhausted. Colors are 0-based; color c+1 is only ever
    opened once colors 0..c are in use, and ties in the saturation order are
    broken by degree into the uncolored subgraph, then lowest vertex index.
    """
    n = int(n)
    k = int(k)
    max_nodes = int(max_nodes)
    if n == 0:
        return 1, [], 0
    if k <= 0:
        return 0, None, 0
    if k > 63:
        raise ValueError("kernel supports k <= 63")

    W = adj.shape[1]
    masks = []
    for v in range(n):
        m = 0
        for w in range(W):
            m |= int(adj[v, w]) << (64 * w)
        masks.append(m)
    deg = [m.bit_count() for m in masks]

    color = [-1] * n
    forbid = [0] * n
    sat = [0] * n
    full = (1 << k) - 1
    nodes = 0

    def apply(v, c):
        changed = []
        color[v] = c
        bit = 1 << c
        dead = False
        m = masks[v]
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            if color[u] < 0:
                deg[u] -= 1
                if not (forbid[u] & bit):
                    forbid[u] |= bit
                    sat[u] += 1
                    changed.append(u)
                    if forbid[u] == full:
                        dead = True
        return changed, dead

    def undo(v, c, changed):
        bit = ~(1 << c)
        color[v] = -1
        m = masks[v]
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            if color[u] < 0:
                deg[u] += 1
        for u in changed:
            forbid[u] &= bit
            sat[u] -= 1

    max_used = -1
    uncolored = n
    for v, c in zip(pre_v, pre_c):
        v = int(v)
        c = int(c)
        if c >= k or color[v] >= 0 or (forbid[v] >> c) & 1:
            return 0, None, 0
        _, dead = apply(v, c)
        uncolored -= 1
        if c > max_used:
            max_used = c
        if dead and uncolored > 0:
            return 0, None, 0

    def search(uncolored, max_used):
        nonlocal nodes
        if uncolored == 0:
            return 1
        nodes += 1
        if nodes > max_nodes:
            return -1
        best_v = -1
        bs = -1
        bd = -1
        for v in range(n):
            if color[v] < 0:
                s = sat[v]
                if s > bs or (s == bs and deg[v] > bd):
                    best_v, bs, bd = v, s, deg[v]
        lim = max_used + 2
        if lim > k:
            lim = k
        cand = ~forbid[best_v] & ((1 << lim) - 1)
        while cand:
            c = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            changed, dead = apply(best_v, c)
            if not dead:
                res = search(uncolored - 1, max_used if c <= max_used else c)
                if res == 1:
                    return 1
                if res == -1:
                    undo(best_v, c, changed)
                    return -1
            undo(best_v, c, changed)
        return 0

    old_limit = sys.getrecursionlimit()
    if old_limit < n + 200:
        sys.setrecursionlimit(n + 200)
    try:
        status = search(uncolored, max_used)
    finally:
        if old_limit < n + 200:
            sys.setrecursionlimit(old_limit)
    return (status, color[:] if status == 1 else None, nodes)
