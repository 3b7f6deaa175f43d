"""Hom posets of multi-homomorphisms, their group actions, and compatibility graphs.

An element of the Hom poset of (F, H) is a tuple of non-empty vertex subsets
of H, one per vertex of F, such that along every edge of F all cross pairs
are edges of H. The order is coordinatewise containment.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .algebra import FiniteGroup, GPoset, cyclic_group
from .caps import DEFAULT_CAPS, ResourceCaps
from .errors import (
    DegenerateGroupError,
    InstanceTooLargeError,
    InternalError,
    TheoremViolationError,
    WrongShapeError,
)
from .graphs import (
    Graph,
    VertexMap,
    is_complete,
    is_homomorphism,
    is_standard_cycle,
)


class HomPoset:
    """The poset of valid subset tuples, sorted by cell bitmasks.

    Element indices are stable across runs: the list is sorted
    lexicographically by the tuple of cell bitmasks.
    """

    def __init__(self, F: Graph, H: Graph, elements):
        self.F = F
        self.H = H
        self.elements: tuple[tuple[int, ...], ...] = tuple(elements)
        self.index = {el: i for i, el in enumerate(self.elements)}

    @property
    def n(self) -> int:
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        a, b = self.elements[i], self.elements[j]
        return all(x & ~y == 0 for x, y in zip(a, b))

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        """Dense boolean coordinatewise-containment matrix (diagonal True)."""
        n = self.n
        if n == 0:
            return np.zeros((0, 0), dtype=bool)
        arr = np.array(self.elements, dtype=np.int64)
        mat = np.ones((n, n), dtype=bool)
        chunk = max(1, (1 << 22) // max(1, n * arr.shape[1]))
        for lo in range(0, n, chunk):
            hi = min(n, lo + chunk)
            block = (arr[lo:hi, None, :] & ~arr[None, :, :]) == 0
            mat[lo:hi] = block.all(axis=2)
        return mat

    def cells_as_lists(self, i: int) -> list[list[int]]:
        return [_mask_to_list(m) for m in self.elements[i]]

    def to_json_dict(self) -> dict:
        return {
            "F": {"n": self.F.n, "edges": self.F.sorted_edges()},
            "H": {"n": self.H.n, "edges": self.H.sorted_edges()},
            "elements": [self.cells_as_lists(i) for i in range(self.n)],
        }

    def __repr__(self):
        return f"HomPoset(F={self.F!r}, H={self.H!r}, n={self.n})"


def _mask_to_list(mask: int) -> list[int]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return out


def build_hom_poset(F: Graph, H: Graph, caps: ResourceCaps = DEFAULT_CAPS) -> HomPoset:
    """Enumerate all valid subset tuples by backtracking over F's vertices.

    Each cell is restricted to the common neighborhood of every
    already-chosen cell across an F-edge, so invalid branches are pruned
    before expansion. Caps abort with no partial result.
    """
    if F.has_loops or H.has_loops:
        raise WrongShapeError("hom posets are defined for loop-free F and H")
    nF, nH = F.n, H.n
    if nF < 1:
        raise WrongShapeError("F needs at least one vertex")
    nbr = H.adjacency_masks
    full = (1 << nH) - 1
    earlier = [[j for j in range(i) if F.has_edge(i, j)] for i in range(nF)]

    elements: list[tuple[int, ...]] = []
    nodes = 0

    def common_neighborhood(mask: int) -> int:
        cn = full
        m = mask
        while m and cn:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            cn &= nbr[v]
        return cn

    def extend(i: int, cells: list[int], cns: list[int]):
        nonlocal nodes
        if i == nF:
            if len(elements) >= caps.max_poset_elements:
                raise InstanceTooLargeError(
                    "max_poset_elements", caps.max_poset_elements
                )
            elements.append(tuple(cells))
            return
        allowed = full
        for j in earlier[i]:
            allowed &= cns[j]
        if not allowed:
            return
        bits = _mask_to_list(allowed)
        for sub in range(1, 1 << len(bits)):
            nodes += 1
            if nodes > caps.max_backtrack_nodes:
                raise InstanceTooLargeError(
                    "max_backtrack_nodes", caps.max_backtrack_nodes
                )
            mask = 0
            s = sub
            while s:
                t = (s & -s).bit_length() - 1
                s &= s - 1
                mask |= 1 << bits[t]
            cells.append(mask)
            cns.append(common_neighborhood(mask))
            extend(i + 1, cells, cns)
            cells.pop()
            cns.pop()

    extend(0, [], [])
    elements.sort()
    return HomPoset(F, H, elements)


def verify_hom_elements(hp: HomPoset) -> bool:
    """Independent validity check, distinct from the enumerator's pruning."""
    for el in hp.elements:
        if any(mask == 0 for mask in el):
            return False
        for i, j in hp.F.edges:
            for a in _mask_to_list(el[i]):
                for b in _mask_to_list(el[j]):
                    if not hp.H.has_edge(a, b):
                        return False
    return True


class HomGPoset(GPoset):
    """A GPoset that remembers the Hom poset it was built from."""

    def __init__(self, hom: HomPoset, group, action, action_kind: str,
                 caps: ResourceCaps = DEFAULT_CAPS):
        super().__init__(hom.n, hom.leq_matrix, group, action, caps=caps)
        self.hom = hom
        self.action_kind = action_kind


def attach_cyclic_action(hp: HomPoset, caps: ResourceCaps = DEFAULT_CAPS) -> HomGPoset:
    """The cyclic-shift action on a Hom poset whose source is a complete graph."""
    r = hp.F.n
    if r < 2 or not is_complete(hp.F):
        raise WrongShapeError("cyclic action needs a complete source graph, r >= 2")
    action = []
    for i in range(r):
        row = []
        for el in hp.elements:
            shifted = tuple(el[(t + i) % r] for t in range(r))
            j = hp.index.get(shifted)
            if j is None:
                raise InternalError("cyclic shift left the element set")
            row.append(j)
        action.append(row)
    gp = HomGPoset(hp, cyclic_group(r), action, "cyclic", caps=caps)
    if not gp.is_free:
        # A fixed tuple would repeat a cell across an edge of the complete
        # graph, forcing a loop in the loop-free target.
        raise InternalError("cyclic action on a loop-free target must be free")
    return gp


def attach_reflection_action(hp: HomPoset, caps: ResourceCaps = DEFAULT_CAPS) -> HomGPoset:
    """The reversal action on a Hom poset whose source is an even cycle."""
    m = hp.F.n
    if m < 4 or m % 2 or not is_standard_cycle(hp.F):
        raise WrongShapeError(
            "reflection action needs an even cycle with consecutive vertex order"
        )
    identity = list(range(hp.n))
    flip = []
    for el in hp.elements:
        rev = tuple(reversed(el))
        j = hp.index.get(rev)
        if j is None:
            raise InternalError("reversal left the element set")
        flip.append(j)
    gp = HomGPoset(hp, cyclic_group(2), [identity, flip], "reflection", caps=caps)
    if not gp.is_free:
        # A reversal-fixed tuple has equal cells across the middle edge,
        # forcing a loop in the loop-free target.
        raise InternalError("reflection action on a loop-free target must be free")
    return gp


def build_compat_graph(p: GPoset) -> Graph:
    """The compatibility graph: x ~ y iff some non-identity g makes x and g.y
    comparable. Loops are kept (x comparable to some g.x), not errors."""
    o = p.group.order
    if o == 1:
        raise DegenerateGroupError(
            "compatibility graphs need a non-trivial group; with the trivial "
            "group the edge set is empty and the bound is vacuous"
        )
    n = p.n
    if n == 0:
        return Graph(0, [])
    mat = p.leq_matrix()
    comp = mat | mat.T
    adj = np.zeros((n, n), dtype=bool)
    e = p.group.identity
    for g in range(o):
        if g == e:
            continue
        perm = np.asarray(p.action[g], dtype=np.int64)
        adj |= comp[:, perm]
    if not np.array_equal(adj, adj.T):
        raise InternalError("compatibility adjacency must be symmetric")
    xs, ys = np.nonzero(np.triu(adj))
    return Graph(n, zip(xs.tolist(), ys.tolist()))


def check_loops(c: Graph) -> tuple[int, ...]:
    """All loop vertices; empty whenever the source G-poset was free."""
    return c.loop_vertices


def projection_hom(p: HomGPoset, compat: Graph | None = None) -> VertexMap:
    """The homomorphism from the compatibility graph to the target graph that
    sends each element to the lowest-index vertex of its first cell.

    The choice of cell vertex is arbitrary mathematically; the minimum makes
    it deterministic. Failure of the homomorphism check is a bug, not a
    user error.
    """
    if not isinstance(p, HomGPoset):
        raise WrongShapeError("projection needs a poset built from a Hom poset")
    cp = compat if compat is not None else build_compat_graph(p)
    if cp.vertex_count != p.n:
        raise WrongShapeError("compatibility graph does not match the poset")
    assignment = [(el[0] & -el[0]).bit_length() - 1 for el in p.hom.elements]
    vm = VertexMap(cp, p.hom.H, assignment)
    if not is_homomorphism(vm):
        raise TheoremViolationError(
            "projection to the target graph failed the homomorphism check"
        )
    return vm
