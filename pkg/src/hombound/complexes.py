"""Order complexes, finite-field homology, connectivity, and the level-poset model.

Homological connectivity over GF(2) and GF(32003) is the computable surrogate
used throughout; every report carries that qualifier explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .algebra import FiniteGroup, GPoset, is_free_action
from .caps import DEFAULT_CAPS, ResourceCaps
from .errors import (
    DegenerateGroupError,
    FreenessError,
    InstanceTooLargeError,
    InvalidArgument,
    TruncationError,
)

DEFAULT_DIM_CAP = 4
DEFAULT_PRIMES = (2, 32003)


class SimplicialComplex:
    """An abstract complex stored per dimension up to a truncation cap.

    All faces of stored simplices of dimension <= dim_cap are stored;
    `is_truncated` records that larger simplices were cut off, which makes
    ranks involving dimension dim_cap + 1 unavailable.
    """

    def __init__(self, vertex_count, simplices_by_dim, dim_cap, is_truncated,
                 cone_detected=False):
        self.vertex_count = int(vertex_count)
        self.simplices = [tuple(level) for level in simplices_by_dim]
        while self.simplices and not self.simplices[-1]:
            self.simplices.pop()
        self.dim_cap = int(dim_cap)
        self.is_truncated = bool(is_truncated)
        self.cone_detected = bool(cone_detected)
        self._rank_cache: dict[tuple[int, int], int] = {}

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    @property
    def is_empty(self) -> bool:
        return not self.simplices

    def f_vector(self) -> list[int]:
        return [len(level) for level in self.simplices]

    def simplex_count(self, d: int) -> int:
        if 0 <= d <= self.dim:
            return len(self.simplices[d])
        return 0

    def facets(self) -> list[tuple[int, ...]]:
        """Maximal stored simplices (top-dimensional plus uncovered lower ones)."""
        out = []
        covered: set[tuple[int, ...]] = set()
        for d in range(self.dim, -1, -1):
            for s in self.simplices[d]:
                if s not in covered:
                    out.append(s)
            if d > 0:
                for s in self.simplices[d]:
                    for i in range(len(s)):
                        covered.add(s[:i] + s[i + 1:])
        return sorted(out, key=lambda s: (len(s), s))

    def max_reliable_degree(self) -> int:
        """Highest degree whose reduced Betti number is exact."""
        if self.is_empty:
            return -1
        return self.dim if not self.is_truncated else self.dim_cap - 1

    def boundary_rank(self, d: int, p: int) -> int:
        """Rank of the degree-d boundary operator over GF(p); cached."""
        key = (p, d)
        if key in self._rank_cache:
            return self._rank_cache[key]
        if d == 0:
            # reduced complex: the augmentation map to degree -1
            rank = 1 if self.simplex_count(0) > 0 else 0
        elif self.simplex_count(d) == 0:
            rank = 0
        else:
            low = self.simplices[d - 1]
            idx = {s: i for i, s in enumerate(low)}
            columns = []
            for s in self.simplices[d]:
                col = []
                sign = 1
                for i in range(len(s)):
                    col.append((idx[s[:i] + s[i + 1:]], sign % p))
                    sign = -sign
                columns.append(col)
            n_rows, indptr, rows, vals = kernels.csc_arrays(len(low), columns)
            rank = kernels.boundary_rank(n_rows, indptr, rows, vals, p)
        self._rank_cache[key] = rank
        return rank

    def reduced_betti(self, d: int, p: int) -> int:
        """Reduced Betti number in degree d over GF(p)."""
        if self.is_empty:
            return 0
        if d > self.max_reliable_degree():
            raise TruncationError(
                f"degree {d} is beyond the reliable range "
                f"(cap {self.dim_cap}, truncated={self.is_truncated})"
            )
        n_d = self.simplex_count(d)
        if n_d == 0:
            return 0
        b = n_d - self.boundary_rank(d, p) - self.boundary_rank(d + 1, p)
        if b < 0:
            raise AssertionError("negative Betti number: rank computation bug")
        return b

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(level) for d, level in enumerate(self.simplices))

    def to_json_dict(self) -> dict:
        return {
            "n_vertices": self.vertex_count,
            "dim": self.dim,
            "dim_cap": self.dim_cap,
            "truncated": self.is_truncated,
            "f_vector": self.f_vector(),
            "facets": [list(s) for s in self.facets()],
        }

    @classmethod
    def from_facets(cls, vertex_count, facets, dim_cap=DEFAULT_DIM_CAP,
                    caps: ResourceCaps = DEFAULT_CAPS) -> "SimplicialComplex":
        """Downward closure of a facet list, truncated at dim_cap."""
        from itertools import combinations

        levels: list[set[tuple[int, ...]]] = [set() for _ in range(dim_cap + 1)]
        truncated = False
        total = 0
        for f in facets:
            f = tuple(sorted(set(int(v) for v in f)))
            if not f:
                continue
            if any(not (0 <= v < vertex_count) for v in f):
                raise InvalidArgument(f"facet {f} out of vertex range")
            if len(f) - 1 > dim_cap:
                truncated = True
            top = min(len(f), dim_cap + 1)
            for size in range(1, top + 1):
                for s in combinations(f, size):
                    if s not in levels[size - 1]:
                        levels[size - 1].add(s)
                        total += 1
                        if total > caps.max_chains:
                            raise InstanceTooLargeError("max_chains", caps.max_chains)
        return cls(
            vertex_count,
            [sorted(level) for level in levels],
            dim_cap,
            truncated,
        )

    def __repr__(self):
        return (
            f"SimplicialComplex(f={self.f_vector()}, cap={self.dim_cap}, "
            f"truncated={self.is_truncated})"
        )


def order_complex(p: GPoset, dim_cap: int = DEFAULT_DIM_CAP,
                  caps: ResourceCaps = DEFAULT_CAPS) -> SimplicialComplex:
    """All chains of the poset as simplices, up to chains of dim_cap + 1 elements.

    Chains are emitted in lexicographic order, so simplex indices are
    deterministic. A cone point (poset maximum or minimum) is recorded to
    support contractibility notes downstream.
    """
    if dim_cap < 1:
        raise InvalidArgument("dim_cap must be at least 1")
    succ = p.successors
    simplices: list[list[tuple[int, ...]]] = [[] for _ in range(dim_cap + 1)]
    truncated = False
    total = 0
    chain: list[int] = []

    def extend(x: int):
        nonlocal truncated, total
        chain.append(x)
        d = len(chain) - 1
        total += 1
        if total > caps.max_chains:
            raise InstanceTooLargeError("max_chains", caps.max_chains)
        simplices[d].append(tuple(chain))
        if d < dim_cap:
            for y in succ[x]:
                extend(y)
        elif succ[x]:
            truncated = True
        chain.pop()

    for x in range(p.n):
        extend(x)
    return SimplicialComplex(
        p.n, simplices, dim_cap, truncated, cone_detected=p.has_extremum()
    )


def poset_dimension(p: GPoset) -> int:
    """Dimension of the order complex: longest chain length minus one.

    Computed exactly by DAG dynamic programming, independent of any cap.
    """
    n = p.n
    if n == 0:
        return -1
    succ = p.successors
    longest = [0] * n
    order = sorted(range(n), key=lambda x: -len(succ[x]))
    # topological processing: repeatedly relax until stable (posets are small;
    # successor lists are transitively closed so one backward sweep suffices
    # after sorting by descending successor count)
    indeg = [0] * n
    for x in range(n):
        for y in succ[x]:
            indeg[y] += 1
    stack = [x for x in range(n) if indeg[x] == 0]
    topo = []
    indeg2 = indeg[:]
    while stack:
        x = stack.pop()
        topo.append(x)
        for y in succ[x]:
            indeg2[y] -= 1
            if indeg2[y] == 0:
                stack.append(y)
    for x in reversed(topo):
        best = 0
        for y in succ[x]:
            if longest[y] + 1 > best:
                best = longest[y] + 1
        longest[x] = best
    return max(longest)


def build_EnG(group: FiniteGroup, n: int, caps: ResourceCaps = DEFAULT_CAPS) -> GPoset:
    """The level poset G x {1..n+1} with left multiplication and level order.

    Its order complex is the join of n+1 copies of |G| points: a free
    (n-1)-connected n-dimensional complex.
    """
    if group.order < 2:
        raise DegenerateGroupError("the level poset model needs |G| >= 2")
    if n < 0:
        raise InvalidArgument("n must be non-negative")
    o = group.order
    count = o * (n + 1)
    if count > caps.max_poset_elements:
        raise InstanceTooLargeError("max_poset_elements", caps.max_poset_elements)
    pairs = []
    for x in range(n + 1):
        for y in range(x + 1, n + 1):
            for g in range(o):
                for h in range(o):
                    pairs.append((x * o + g, y * o + h))
    action = []
    for h in range(o):
        row = [0] * count
        for x in range(n + 1):
            for g in range(o):
                row[x * o + g] = x * o + group.mult[h][g]
        action.append(row)
    return GPoset(count, pairs, group, action, caps=caps)


@dataclass(frozen=True)
class BettiVector:
    """Reduced Betti numbers over one prime field, degrees 0..computed_up_to."""

    field_prime: int
    reduced_betti: tuple[int, ...]
    computed_up_to: int
    empty: bool = False

    def to_json_dict(self) -> dict:
        return {
            "p": self.field_prime,
            "betti": list(self.reduced_betti),
            "truncated_range": self.computed_up_to,
            "empty": self.empty,
        }


def homology_ranks(k: SimplicialComplex, p: int, up_to: int | None = None) -> BettiVector:
    """Reduced Betti numbers over GF(p) up to `up_to` (default: the full
    reliable range). Requests beyond the reliable range raise."""
    if k.is_empty:
        limit = up_to if up_to is not None else 0
        return BettiVector(p, (0,) * (limit + 1), limit, empty=True)
    reliable = k.max_reliable_degree()
    if up_to is None:
        up_to = reliable
    if up_to > reliable:
        raise TruncationError(
            f"betti numbers requested to degree {up_to}, reliable only to {reliable}"
        )
    betti = tuple(k.reduced_betti(d, p) for d in range(up_to + 1))
    return BettiVector(p, betti, up_to)


@dataclass(frozen=True)
class ConnectivityReport:
    """Homological connectivity plus the evidence that produced it."""

    value: int
    dim_cap: int
    truncated: bool
    empty: bool
    acyclic_in_range: bool
    cone_detected: bool
    torsion_disagreement: bool
    primes: tuple[int, ...]
    betti: dict = field(default_factory=dict)  # prime -> tuple of computed betti

    qualifier: str = "homological"

    def to_json_dict(self) -> dict:
        return {
            "qualifier": self.qualifier,
            "value": self.value,
            "dim_cap": self.dim_cap,
            "truncated": self.truncated,
            "empty": self.empty,
            "acyclic_in_range": self.acyclic_in_range,
            "cone_detected": self.cone_detected,
            "torsion_disagreement": self.torsion_disagreement,
            "primes": list(self.primes),
            "betti": {str(p): list(v) for p, v in sorted(self.betti.items())},
        }


def homological_connectivity(
    k: SimplicialComplex, primes: tuple[int, ...] = DEFAULT_PRIMES
) -> ConnectivityReport:
    """Largest degree through which reduced homology vanishes over every prime.

    Conventions: empty complex -2; non-empty disconnected -1; the reported
    value is capped at dim_cap - 2, with flags describing why (truncation,
    or full acyclicity in the computed range). Per-prime disagreement is
    reported as a torsion warning, never merged silently.
    """
    if k.is_empty:
        return ConnectivityReport(
            value=-2, dim_cap=k.dim_cap, truncated=k.is_truncated, empty=True,
            acyclic_in_range=False, cone_detected=False,
            torsion_disagreement=False, primes=tuple(primes),
        )
    limit = k.max_reliable_degree()
    betti: dict[int, list[int]] = {p: [] for p in primes}
    first_nonzero = None
    for d in range(limit + 1):
        vals = {}
        for p in primes:
            vals[p] = k.reduced_betti(d, p)
            betti[p].append(vals[p])
        if any(v != 0 for v in vals.values()) and first_nonzero is None:
            first_nonzero = d
            break
    acyclic = first_nonzero is None
    raw = (limit if k.is_truncated else k.dim_cap) if acyclic else first_nonzero - 1
    value = min(raw, k.dim_cap - 2)
    computed = len(next(iter(betti.values())))
    torsion = any(
        len({betti[p][d] for p in primes}) > 1 for d in range(computed)
    )
    return ConnectivityReport(
        value=value,
        dim_cap=k.dim_cap,
        truncated=k.is_truncated,
        empty=False,
        acyclic_in_range=acyclic,
        cone_detected=k.cone_detected,
        torsion_disagreement=torsion,
        primes=tuple(primes),
        betti={p: tuple(v) for p, v in betti.items()},
    )


@dataclass(frozen=True)
class IndexInterval:
    """The bracketing interval [connectivity + 1, dimension] for the G-index."""

    lower: int
    upper: int
    group_order: int

    def to_json_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper,
                "group_order": self.group_order}


def index_interval(
    p: GPoset,
    dim_cap: int = DEFAULT_DIM_CAP,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    caps: ResourceCaps = DEFAULT_CAPS,
) -> IndexInterval:
    """[conn + 1, dim] for the order complex of a free G-poset."""
    if not is_free_action(p):
        raise FreenessError("the index interval is defined for free actions only")
    k = order_complex(p, dim_cap=dim_cap, caps=caps)
    report = homological_connectivity(k, primes=primes)
    return IndexInterval(report.value + 1, poset_dimension(p), p.group.order)
