"""Finite simple graphs with optional loops, colorings, and vertex maps."""

from __future__ import annotations

from functools import cached_property
from itertools import combinations

from .errors import InvalidArgument


class Graph:
    """Immutable undirected graph on vertices 0..n-1.

    Loops are stored as (v, v) edges: compatibility graphs of non-free group
    actions can legitimately contain them, so they are representable here and
    rejected only by the operations that need their absence.
    """

    def __init__(self, vertex_count: int, edges=(), labels=None):
        vertex_count = int(vertex_count)
        if vertex_count < 0:
            raise InvalidArgument("vertex_count must be non-negative")
        normalized = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InvalidArgument(
                    f"edge ({u}, {v}) out of range for {vertex_count} vertices"
                )
            normalized.add((u, v) if u <= v else (v, u))
        self.vertex_count = vertex_count
        self.edges = frozenset(normalized)
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != vertex_count:
                raise InvalidArgument("labels length must equal vertex_count")
        self.labels = labels

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def loop_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(u for u, v in self.edges if u == v))

    @property
    def has_loops(self) -> bool:
        return bool(self.loop_vertices)

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        """Neighbor sets; loops do not contribute (tracked separately)."""
        nbr = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            if u != v:
                nbr[u].add(v)
                nbr[v].add(u)
        return tuple(frozenset(s) for s in nbr)

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        masks = [0] * self.vertex_count
        for u, v in self.edges:
            if u != v:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
        return tuple(masks)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u <= v else (v, u)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertex_count, self.edges))

    def __repr__(self):
        return f"Graph(n={self.vertex_count}, edges={len(self.edges)})"


class Coloring:
    """A vertex -> color assignment, renumbered to contiguous colors 1..C.

    Normalization keeps the relative order of the raw color values, so two
    assignments that differ only by a monotone renaming compare equal.
    """

    def __init__(self, assignment):
        raw = [int(c) for c in assignment]
        order = sorted(set(raw))
        remap = {c: i + 1 for i, c in enumerate(order)}
        self.assignment = tuple(remap[c] for c in raw)
        self.color_count = len(order)

    def __len__(self):
        return len(self.assignment)

    def __getitem__(self, vertex: int) -> int:
        return self.assignment[vertex]

    def __eq__(self, other):
        return isinstance(other, Coloring) and self.assignment == other.assignment

    def __hash__(self):
        return hash(self.assignment)

    def is_proper(self, g: Graph) -> bool:
        """True iff no edge (loops included) joins equal colors on g."""
        if len(self.assignment) != g.vertex_count:
            return False
        for u, v in g.edges:
            if self.assignment[u] == self.assignment[v]:
                return False
        return True

    def to_json_dict(self) -> dict:
        return {"chi": self.color_count, "colors": list(self.assignment)}

    def __repr__(self):
        return f"Coloring(C={self.color_count}, n={len(self.assignment)})"


class VertexMap:
    """A total map between the vertex sets of two graphs."""

    def __init__(self, source: Graph, target: Graph, assignment):
        assignment = tuple(int(x) for x in assignment)
        if len(assignment) != source.vertex_count:
            raise InvalidArgument("assignment must be total on source vertices")
        for y in assignment:
            if not (0 <= y < target.vertex_count):
                raise InvalidArgument(f"image vertex {y} not in target")
        self.source = source
        self.target = target
        self.assignment = assignment

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def __repr__(self):
        return f"VertexMap({self.source!r} -> {self.target!r})"


def is_homomorphism(f: VertexMap) -> bool:
    """True iff every source edge maps onto a target edge.

    A source edge whose endpoints map to the same target vertex needs a loop
    there, so loop-free targets make such maps fail.
    """
    a = f.assignment
    for u, v in f.source.edges:
        if not f.target.has_edge(a[u], a[v]):
            return False
    return True


def complete_graph(r: int) -> Graph:
    """The complete graph on r >= 1 vertices."""
    if r < 1:
        raise InvalidArgument("complete_graph needs r >= 1")
    return Graph(r, combinations(range(r), 2))


def cycle_graph(m: int) -> Graph:
    """The cycle 0-1-...-(m-1)-0 on m >= 3 vertices."""
    if m < 3:
        raise InvalidArgument("cycle_graph needs m >= 3")
    return Graph(m, [(i, (i + 1) % m) for i in range(m)])


def kneser_graph(n: int, k: int) -> Graph:
    """k-subsets of {1..n} as vertices, edges between disjoint subsets."""
    if k < 1 or n < 2 * k:
        raise InvalidArgument("kneser_graph needs n >= 2k >= 2")
    subsets = list(combinations(range(1, n + 1), k))
    edges = [
        (i, j)
        for i, j in combinations(range(len(subsets)), 2)
        if not set(subsets[i]) & set(subsets[j])
    ]
    labels = ["{" + ",".join(map(str, s)) + "}" for s in subsets]
    return Graph(len(subsets), edges, labels)


def petersen_graph() -> Graph:
    return kneser_graph(5, 2)


def is_complete(g: Graph) -> bool:
    n = g.vertex_count
    return not g.has_loops and n >= 1 and g.edge_count == n * (n - 1) // 2


def is_standard_cycle(g: Graph) -> bool:
    """True iff g is cycle_graph(n) with the consecutive vertex order."""
    n = g.vertex_count
    if n < 3 or g.has_loops:
        return False
    want = {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    return set(g.edges) == want
