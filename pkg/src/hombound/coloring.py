"""Exact chromatic numbers via DSATUR-ordered branch and bound.

The search is deterministic: greedy clique seed, DSATUR greedy upper bound,
then iterated k-colorability tests going downward, all with fixed
tie-breaking (saturation, then static degree, then lowest vertex index).
"""

from __future__ import annotations

from . import kernels
from .caps import DEFAULT_CAPS, ResourceCaps
from .errors import InstanceTooLargeError, InvalidArgument, UncolorableGraphError
from .graphs import Coloring, Graph


def greedy_clique(g: Graph) -> list[int]:
    """A deterministic greedy clique; its size lower-bounds the chromatic number.

    Grows from each of the twelve highest-degree vertices and keeps the best,
    preferring high-degree candidates and breaking ties by lowest index.
    """
    n = g.vertex_count
    if n == 0:
        return []
    masks = g.adjacency_masks
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    best: list[int] = [order[0]]
    for start in order[:12]:
        clique = [start]
        cand = masks[start]
        while cand:
            pick = -1
            pick_key = None
            m = cand
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                key = (-g.degree(v), v)
                if pick_key is None or key < pick_key:
                    pick_key, pick = key, v
            clique.append(pick)
            cand &= masks[pick]
        if len(clique) > len(best):
            best = clique
    return best


def dsatur_upper_bound(g: Graph) -> list[int]:
    """Greedy DSATUR coloring (0-based colors); an upper-bound witness."""
    n = g.vertex_count
    masks = g.adjacency_masks
    colors = [-1] * n
    forbid = [0] * n
    for _ in range(n):
        best_v = -1
        bs = -1
        bd = -1
        for v in range(n):
            if colors[v] < 0:
                s = forbid[v].bit_count()
                d = g.degree(v)
                if s > bs or (s == bs and d > bd):
                    best_v, bs, bd = v, s, d
        c = 0
        while (forbid[best_v] >> c) & 1:
            c += 1
        colors[best_v] = c
        m = masks[best_v]
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            forbid[u] |= 1 << c
    return colors


def chromatic_number(
    g: Graph,
    caps: ResourceCaps = DEFAULT_CAPS,
    initial: Coloring | None = None,
) -> tuple[int, Coloring]:
    """Exact chromatic number with a proper coloring witness.

    `initial` may supply a known proper coloring as the starting incumbent
    (it never affects the result, only the search effort). Graphs with loops
    are not colorable and are rejected.
    """
    if g.has_loops:
        raise UncolorableGraphError(
            f"graph has loops at {list(g.loop_vertices)}; not colorable"
        )
    n = g.vertex_count
    if n == 0:
        return 0, Coloring([])
    if not any(u != v for u, v in g.edges):
        return 1, Coloring([1] * n)

    clique = greedy_clique(g)
    lb = max(2, len(clique))
    best = dsatur_upper_bound(g)
    ub = max(best) + 1
    if initial is not None:
        if not initial.is_proper(g):
            raise InvalidArgument("initial coloring is not proper on this graph")
        if initial.color_count < ub:
            best = [c - 1 for c in initial.assignment]
            ub = initial.color_count

    if ub > lb:
        adj = kernels.pack_adjacency(n, g.edges)
        pre_v = list(clique)
        pre_c = list(range(len(clique)))
        while ub > lb:
            status, colors, _ = kernels.find_k_coloring(
                n, adj, ub - 1, caps.max_coloring_nodes, pre_v, pre_c
            )
            if status == -1:
                raise InstanceTooLargeError(
                    "max_coloring_nodes", caps.max_coloring_nodes
                )
            if status == 0:
                break
            best = colors
            ub = max(colors) + 1
    return ub, Coloring([c + 1 for c in best])
