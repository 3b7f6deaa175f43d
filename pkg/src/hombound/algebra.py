"""Finite groups given by multiplication tables, and validated G-posets."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .caps import DEFAULT_CAPS, ResourceCaps
from .errors import (
    ActionAxiomError,
    EquivarianceError,
    InvalidArgument,
    OrderAxiomError,
)

MAX_GROUP_ORDER = 64


class FiniteGroup:
    """A group on elements 0..order-1 via an explicit multiplication table.

    All axioms (Latin square, identity, inverses, associativity) are checked
    exhaustively at construction; orders above 64 are rejected.
    """

    def __init__(self, mult):
        table = tuple(tuple(int(x) for x in row) for row in mult)
        order = len(table)
        if order < 1:
            raise InvalidArgument("group order must be at least 1")
        if order > MAX_GROUP_ORDER:
            raise InvalidArgument(f"group order {order} exceeds {MAX_GROUP_ORDER}")
        arr = np.array(table, dtype=np.int64)
        if arr.shape != (order, order):
            raise InvalidArgument("multiplication table must be square")
        if arr.min() < 0 or arr.max() >= order:
            raise InvalidArgument("table entries must be element indices")
        ident = np.arange(order)
        for i in range(order):
            if sorted(table[i]) != list(range(order)) or sorted(
                arr[:, i].tolist()
            ) != list(range(order)):
                raise ActionAxiomError("multiplication table is not a Latin square")
        # identity: a two-sided unit
        identity = -1
        for e in range(order):
            if np.array_equal(arr[e], ident) and np.array_equal(arr[:, e], ident):
                identity = e
                break
        if identity < 0:
            raise ActionAxiomError("multiplication table has no identity element")
        # associativity: (ab)c == a(bc), exhaustive
        left = arr[arr, :]  # left[a, b, c] = arr[arr[a, b], c]
        right = arr[:, arr]  # right[a, b, c] = arr[a, arr[b, c]]
        if not np.array_equal(left, right):
            raise ActionAxiomError("multiplication table is not associative")
        inverse = [-1] * order
        for x in range(order):
            for y in range(order):
                if table[x][y] == identity and table[y][x] == identity:
                    inverse[x] = y
                    break
            if inverse[x] < 0:
                raise ActionAxiomError(f"element {x} has no two-sided inverse")
        self.order = order
        self.mult = table
        self.identity = identity
        self.inverse = tuple(inverse)

    def op(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mult == other.mult

    def __hash__(self):
        return hash(self.mult)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def to_json_dict(self) -> dict:
        return {"order": self.order, "mult": [list(row) for row in self.mult]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "FiniteGroup":
        return cls(data["mult"])


def cyclic_group(r: int) -> FiniteGroup:
    """Z_r with mult(i, j) = (i + j) mod r and identity 0."""
    if r < 1:
        raise InvalidArgument("cyclic_group needs r >= 1")
    return FiniteGroup([[(i + j) % r for j in range(r)] for i in range(r)])


class GPoset:
    """A finite poset with a validated order-preserving group action.

    The order relation is stored as a dense boolean matrix (diagonal
    included) up to `caps.dense_relation_limit` elements, and as a strict
    pair set above that. Instances are immutable after construction.
    """

    def __init__(self, n, relation, group, action, caps: ResourceCaps = DEFAULT_CAPS):
        n = int(n)
        if n < 0:
            raise InvalidArgument("element count must be non-negative")
        self.n = n
        self.group = group
        self.action = tuple(tuple(int(x) for x in row) for row in action)
        self._mat, self._pairs = self._normalize_relation(n, relation, caps)
        self._validate_order()
        self._validate_action()
        self._validate_equivariance()

    # -- construction ------------------------------------------------------

    @staticmethod
    def _normalize_relation(n, relation, caps):
        if isinstance(relation, np.ndarray):
            mat = relation.astype(bool)
            if mat.shape != (n, n):
                raise InvalidArgument("relation matrix has wrong shape")
            mat = mat.copy()
            np.fill_diagonal(mat, True)
            if n <= caps.dense_relation_limit:
                return mat, None
            xs, ys = np.nonzero(mat)
            pairs = frozenset(
                (int(x), int(y)) for x, y in zip(xs, ys) if x != y
            )
            return None, pairs
        pairs = set()
        for x, y in relation:
            x, y = int(x), int(y)
            if not (0 <= x < n and 0 <= y < n):
                raise InvalidArgument(f"relation pair ({x}, {y}) out of range")
            if x != y:
                pairs.add((x, y))
        if n <= caps.dense_relation_limit:
            mat = np.zeros((n, n), dtype=bool)
            np.fill_diagonal(mat, True)
            for x, y in pairs:
                mat[x, y] = True
            return mat, None
        return None, frozenset(pairs)

    def _validate_order(self):
        if self._mat is not None:
            m = self._mat
            sym = m & m.T
            if not np.array_equal(sym, np.eye(self.n, dtype=bool)):
                raise OrderAxiomError("relation is not antisymmetric")
            f = m.astype(np.float32)
            closure = (f @ f) > 0.5
            if (closure & ~m).any():
                raise OrderAxiomError("relation is not transitive")
        else:
            pairs = self._pairs
            succ: dict[int, set[int]] = {}
            for x, y in pairs:
                if (y, x) in pairs:
                    raise OrderAxiomError("relation is not antisymmetric")
                succ.setdefault(x, set()).add(y)
            for x, ys in succ.items():
                for y in ys:
                    if not succ.get(y, set()) <= ys:
                        raise OrderAxiomError("relation is not transitive")

    def _validate_action(self):
        o = self.group.order
        if len(self.action) != o:
            raise ActionAxiomError("action table must have one row per group element")
        arr = np.array(self.action, dtype=np.int64).reshape(o, -1)
        if self.n == 0:
            return
        if arr.shape != (o, self.n):
            raise ActionAxiomError("action rows must cover every element")
        if arr.min() < 0 or arr.max() >= self.n:
            raise ActionAxiomError("action entries must be element indices")
        ident = np.arange(self.n)
        for g in range(o):
            if np.bincount(arr[g], minlength=self.n).max() > 1:
                raise ActionAxiomError(f"action of group element {g} is not a bijection")
        if not np.array_equal(arr[self.group.identity], ident):
            raise ActionAxiomError("identity element must act trivially")
        for g in range(o):
            for h in range(o):
                gh = self.group.mult[g][h]
                if not np.array_equal(arr[gh], arr[g][arr[h]]):
                    raise ActionAxiomError("action is not compatible with the group law")
        self._action_arr = arr

    def _validate_equivariance(self):
        if self.n == 0:
            return
        if self._mat is not None:
            m = self._mat
            for g in range(self.group.order):
                perm = self._action_arr[g]
                if (m & ~m[np.ix_(perm, perm)]).any():
                    raise EquivarianceError(
                        f"group element {g} does not preserve the order"
                    )
        else:
            for g in range(self.group.order):
                perm = self.action[g]
                for x, y in self._pairs:
                    if (perm[x], perm[y]) not in self._pairs:
                        raise EquivarianceError(
                            f"group element {g} does not preserve the order"
                        )

    # -- queries -----------------------------------------------------------

    def leq(self, x: int, y: int) -> bool:
        if x == y:
            return True
        if self._mat is not None:
            return bool(self._mat[x, y])
        return (x, y) in self._pairs

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    @cached_property
    def strict_pairs(self) -> tuple[tuple[int, int], ...]:
        """All pairs (x, y) with x < y in the order, sorted."""
        if self._mat is not None:
            strict = self._mat.copy()
            np.fill_diagonal(strict, False)
            xs, ys = np.nonzero(strict)
            return tuple(zip(xs.tolist(), ys.tolist()))
        return tuple(sorted(self._pairs))

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        """Strict successors of each element, sorted ascending."""
        succ: list[list[int]] = [[] for _ in range(self.n)]
        for x, y in self.strict_pairs:
            succ[x].append(y)
        return tuple(tuple(sorted(s)) for s in succ)

    def leq_matrix(self) -> np.ndarray:
        """Dense boolean matrix of the relation (diagonal included)."""
        if self._mat is not None:
            return self._mat
        mat = np.zeros((self.n, self.n), dtype=bool)
        np.fill_diagonal(mat, True)
        for x, y in self._pairs:
            mat[x, y] = True
        return mat

    @cached_property
    def is_free(self) -> bool:
        e = self.group.identity
        for g in range(self.group.order):
            if g == e:
                continue
            row = self.action[g]
            if any(row[x] == x for x in range(self.n)):
                return False
        return True

    def has_extremum(self) -> bool:
        """True iff the poset has a maximum or a minimum element."""
        if self.n == 0:
            return False
        m = self.leq_matrix()
        return bool(m.all(axis=0).any() or m.all(axis=1).any())

    def __repr__(self):
        return f"GPoset(n={self.n}, group_order={self.group.order})"

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "leq": [list(p) for p in self.strict_pairs],
            "group": self.group.to_json_dict(),
            "action": [list(row) for row in self.action],
        }

    @classmethod
    def from_json_dict(cls, data: dict, caps: ResourceCaps = DEFAULT_CAPS) -> "GPoset":
        group = FiniteGroup.from_json_dict(data["group"])
        return cls(data["n"], data["leq"], group, data["action"], caps=caps)


def make_gposet(
    n: int,
    relation,
    group: FiniteGroup,
    action,
    caps: ResourceCaps = DEFAULT_CAPS,
) -> GPoset:
    """Validate and build a GPoset; raises on any axiom violation.

    `relation` is either an iterable of (x, y) pairs meaning x <= y (the
    reflexive closure is added) or a boolean matrix.
    """
    return GPoset(n, relation, group, action, caps=caps)


def is_free_action(p: GPoset) -> bool:
    """True iff no non-identity group element fixes any poset element."""
    return p.is_free


def orbit(p: GPoset, x: int) -> set[int]:
    """The set {g.x : g in G}; size equals |G| exactly on free orbits."""
    if not (0 <= x < p.n):
        raise InvalidArgument(f"element {x} out of range")
    return {p.action[g][x] for g in range(p.group.order)}


def orbits(p: GPoset) -> list[tuple[int, ...]]:
    """All orbits, each sorted, ordered by smallest member."""
    seen = [False] * p.n
    result = []
    for x in range(p.n):
        if not seen[x]:
            orb = sorted(orbit(p, x))
            for y in orb:
                seen[y] = True
            result.append(tuple(orb))
    return result
