"""The coloring-induced equivariant map and end-to-end bound certificates.

A proper coloring of the compatibility graph of a free G-poset induces a
simplicial equivariant map into the level poset on G x {1..C-|G|+1}: each
element goes to (g_x^{-1}, c(g_x.x)) where g_x.x carries the minimum color on
the orbit of x. Verifying that map mechanically, and chaining it with the
projection homomorphism to the target graph, yields an audited inequality
chain  conn + 1 + |G| <= chi(compat) <= chi(target).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import GPoset, is_free_action
from .caps import DEFAULT_CAPS, ResourceCaps
from .coloring import chromatic_number
from .complexes import (
    DEFAULT_DIM_CAP,
    DEFAULT_PRIMES,
    ConnectivityReport,
    build_EnG,
    homological_connectivity,
    order_complex,
    poset_dimension,
)
from .errors import (
    FreenessError,
    InternalError,
    InvalidArgument,
    TheoremViolationError,
    WrongShapeError,
)
from .graphs import Coloring, Graph, VertexMap, is_complete, is_standard_cycle
from .homposets import (
    HomGPoset,
    HomPoset,
    attach_cyclic_action,
    attach_reflection_action,
    build_compat_graph,
    build_hom_poset,
    check_loops,
    projection_hom,
)


@dataclass(frozen=True)
class LambdaMap:
    """The induced equivariant map; assignment[x] = (group element, color)."""

    poset: GPoset
    coloring: Coloring
    assignment: tuple[tuple[int, int], ...]

    @property
    def color_count(self) -> int:
        return self.coloring.color_count

    @property
    def target_level_count(self) -> int:
        return self.color_count - self.poset.group.order + 1

    def target_poset(self) -> GPoset:
        """The level poset the map lands in: G x {1..C-|G|+1}."""
        return build_EnG(self.poset.group, self.target_level_count - 1)

    def to_json_dict(self) -> dict:
        return {
            "assignment": [list(a) for a in self.assignment],
            "color_count": self.color_count,
            "target_levels": self.target_level_count,
        }


def construct_lambda(
    p: GPoset,
    c: Coloring,
    compat: Graph | None = None,
    _trust_coloring: bool = False,
) -> LambdaMap:
    """Build the induced map from a proper coloring of the compatibility graph.

    The orbit of each element is a clique, so its colors are pairwise
    distinct and the minimum is attained exactly once; a tie therefore
    signals a construction bug, not a user error. `_trust_coloring` skips
    the properness and uniqueness checks (test harness use only).
    """
    if not is_free_action(p):
        raise FreenessError("the induced map is defined for free G-posets")
    if len(c) != p.n:
        raise InvalidArgument("coloring does not cover the poset elements")
    if not _trust_coloring:
        cp = compat if compat is not None else build_compat_graph(p)
        if not c.is_proper(cp):
            raise InvalidArgument("coloring is not proper on the compatibility graph")
    group = p.group
    order = group.order
    assignment = []
    limit = c.color_count - order + 1
    for x in range(p.n):
        best_g = -1
        best_color = None
        tie = False
        for g in range(order):
            col = c[p.action[g][x]]
            if best_color is None or col < best_color:
                best_color, best_g, tie = col, g, False
            elif col == best_color:
                tie = True
        if tie and not _trust_coloring:
            raise InternalError(
                "orbit minimum color is not unique: the orbit was not a clique"
            )
        if best_color > limit and not _trust_coloring:
            raise InternalError(
                "orbit minimum color exceeds the level range: orbit clique missing"
            )
        assignment.append((group.inverse[best_g], best_color))
    return LambdaMap(p, c, tuple(assignment))


@dataclass(frozen=True)
class LambdaReport:
    """Violations found when checking the induced map mechanically."""

    equivariance: tuple[tuple[int, int], ...]  # offending (g, x) pairs
    simpliciality: tuple[tuple[int, int], ...]  # offending comparable (x, y)

    @property
    def ok(self) -> bool:
        return not self.equivariance and not self.simpliciality

    def to_json_dict(self) -> dict:
        return {
            "equivariance_violations": [list(v) for v in self.equivariance],
            "simpliciality_violations": [list(v) for v in self.simpliciality],
            "ok": self.ok,
        }


def verify_lambda(m: LambdaMap, max_reported: int = 32) -> LambdaReport:
    """Check equivariance at every (g, x) and simpliciality on every
    comparable pair; report all violations (up to a listing cap each)."""
    p = m.poset
    group = p.group
    eq_bad: list[tuple[int, int]] = []
    for g in range(group.order):
        row = p.action[g]
        for x in range(p.n):
            lx = m.assignment[x]
            lgx = m.assignment[row[x]]
            if lgx != (group.mult[g][lx[0]], lx[1]):
                eq_bad.append((g, x))
                if len(eq_bad) >= max_reported:
                    break
        if len(eq_bad) >= max_reported:
            break
    simp_bad: list[tuple[int, int]] = []
    for x, y in p.strict_pairs:
        ax, ay = m.assignment[x], m.assignment[y]
        if ax[1] == ay[1] and ax[0] != ay[0]:
            simp_bad.append((x, y))
            if len(simp_bad) >= max_reported:
                break
    return LambdaReport(tuple(eq_bad), tuple(simp_bad))


@dataclass(frozen=True)
class BoundCertificate:
    """The audited inequality chain with all of its witnesses."""

    instance: dict
    group_order: int
    connectivity: ConnectivityReport
    poset_size: int
    complex_dimension: int
    lower_bound: int  # connectivity + 1 + |G|
    chi_compat: int
    compat_coloring: Coloring
    chi_target: int | None
    target_coloring: Coloring | None
    lambda_map: LambdaMap | None
    lambda_report: LambdaReport | None
    projection: VertexMap | None
    vacuous: bool
    links: tuple[dict, ...]
    warnings: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "schema": "hombound.certificate/1",
            "instance": self.instance,
            "group_order": self.group_order,
            "connectivity": self.connectivity.to_json_dict(),
            "poset_size": self.poset_size,
            "complex_dimension": self.complex_dimension,
            "index_interval": {
                "lower": self.connectivity.value + 1,
                "upper": self.complex_dimension,
            },
            "lower_bound": self.lower_bound,
            "chi_compat": {
                "value": self.chi_compat,
                "coloring": list(self.compat_coloring.assignment),
            },
            "chi_target": None
            if self.chi_target is None
            else {
                "value": self.chi_target,
                "coloring": list(self.target_coloring.assignment),
            },
            "lambda": None if self.lambda_map is None else {
                **self.lambda_map.to_json_dict(),
                **(self.lambda_report.to_json_dict() if self.lambda_report else {}),
            },
            "projection": None
            if self.projection is None
            else list(self.projection.assignment),
            "vacuous": self.vacuous,
            "verdict": "vacuous-empty" if self.vacuous else "certified",
            "links": list(self.links),
            "warnings": list(self.warnings),
        }


def bound_certificate(
    p: GPoset,
    h: Graph | None = None,
    dim_cap: int = DEFAULT_DIM_CAP,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    caps: ResourceCaps = DEFAULT_CAPS,
) -> BoundCertificate:
    """Run the whole pipeline on a free G-poset and audit every inequality.

    Any failed link raises a theorem-violation error: those inequalities are
    unconditional, so a failure means an implementation bug. Empty posets
    yield a vacuous certificate instead (their chain cannot be asserted).
    """
    if not is_free_action(p):
        raise FreenessError("bound certificates require a free action")
    group = p.group
    order = group.order

    if isinstance(p, HomGPoset):
        instance = {
            "kind": "hom",
            "action": p.action_kind,
            "F": {"n": p.hom.F.n, "edges": p.hom.F.sorted_edges()},
            "H": {"n": p.hom.H.n, "edges": p.hom.H.sorted_edges()},
        }
        if h is None:
            h = p.hom.H
        elif h != p.hom.H:
            raise InvalidArgument("explicit target differs from the Hom target")
    else:
        instance = {"kind": "gposet", "poset": p.to_json_dict()}

    warnings: list[str] = []
    komplex = order_complex(p, dim_cap=dim_cap, caps=caps)
    conn = homological_connectivity(komplex, primes=primes)
    if conn.truncated:
        warnings.append("order complex truncated at dim_cap; connectivity capped")
    if conn.torsion_disagreement:
        warnings.append("betti numbers disagree across primes (torsion suspected)")
    lower = conn.value + 1 + order
    dim = poset_dimension(p)

    if p.n == 0:
        return BoundCertificate(
            instance=instance,
            group_order=order,
            connectivity=conn,
            poset_size=0,
            complex_dimension=dim,
            lower_bound=lower,
            chi_compat=0,
            compat_coloring=Coloring([]),
            chi_target=None,
            target_coloring=None,
            lambda_map=None,
            lambda_report=None,
            projection=None,
            vacuous=True,
            links=(
                {
                    "name": "conn+1+|G| <= chi(compat)",
                    "lhs": lower,
                    "rhs": 0,
                    "holds": lower <= 0,
                    "asserted": False,
                },
            ),
            warnings=tuple(
                warnings + ["empty poset: inequality chain is vacuous, not asserted"]
            ),
        )

    compat = build_compat_graph(p)
    loops = check_loops(compat)
    if loops:
        raise TheoremViolationError(
            f"free action produced loops at {list(loops)} in the compatibility graph"
        )

    initial = None
    projection = None
    chi_target = None
    target_coloring = None
    if isinstance(p, HomGPoset) and h is not None and not h.has_loops:
        projection = projection_hom(p, compat)
        chi_target, target_coloring = chromatic_number(h, caps=caps)
        initial = Coloring(
            [target_coloring[projection[x]] for x in range(p.n)]
        )

    chi_cp, compat_coloring = chromatic_number(compat, caps=caps, initial=initial)

    lam = construct_lambda(p, compat_coloring, compat)
    report = verify_lambda(lam)
    if not report.ok:
        raise TheoremViolationError(
            f"induced map verification failed: "
            f"{len(report.equivariance)} equivariance and "
            f"{len(report.simpliciality)} simpliciality violations"
        )

    links = [
        {
            "name": "conn+1+|G| <= chi(compat)",
            "lhs": lower,
            "rhs": chi_cp,
            "holds": lower <= chi_cp,
            "asserted": True,
        }
    ]
    if lower > chi_cp:
        raise TheoremViolationError(
            f"lower bound {lower} exceeds chi(compat) = {chi_cp}"
        )
    if chi_target is not None:
        links.append(
            {
                "name": "chi(compat) <= chi(target)",
                "lhs": chi_cp,
                "rhs": chi_target,
                "holds": chi_cp <= chi_target,
                "asserted": True,
            }
        )
        if chi_cp > chi_target:
            raise TheoremViolationError(
                f"chi(compat) = {chi_cp} exceeds chi(target) = {chi_target}"
            )

    return BoundCertificate(
        instance=instance,
        group_order=order,
        connectivity=conn,
        poset_size=p.n,
        complex_dimension=dim,
        lower_bound=lower,
        chi_compat=chi_cp,
        compat_coloring=compat_coloring,
        chi_target=chi_target,
        target_coloring=target_coloring,
        lambda_map=lam,
        lambda_report=report,
        projection=projection,
        vacuous=False,
        links=tuple(links),
        warnings=tuple(warnings),
    )


@dataclass(frozen=True)
class TestGraphReport:
    """chi(H) >= k + 1 + chi(T) audited for a complete-graph or even-cycle T."""

    t_kind: str
    chi_t: int
    chi_h: int
    connectivity: ConnectivityReport
    poset_size: int
    bound: int
    slack: int
    holds: bool

    def to_json_dict(self) -> dict:
        return {
            "t_kind": self.t_kind,
            "chi_t": self.chi_t,
            "chi_h": self.chi_h,
            "connectivity": self.connectivity.to_json_dict(),
            "poset_size": self.poset_size,
            "bound": self.bound,
            "slack": self.slack,
            "holds": self.holds,
        }


def build_hom_instance(
    T: Graph, H: Graph, caps: ResourceCaps = DEFAULT_CAPS
) -> HomGPoset:
    """Hom poset of (T, H) with the action matching T's shape attached."""
    hp = build_hom_poset(T, H, caps=caps)
    if is_complete(T) and T.n >= 2:
        return attach_cyclic_action(hp, caps=caps)
    if is_standard_cycle(T) and T.n % 2 == 0:
        return attach_reflection_action(hp, caps=caps)
    raise WrongShapeError(
        "supported sources are complete graphs (r >= 2) and even cycles"
    )


def test_graph_check(
    T: Graph,
    H: Graph,
    dim_cap: int = DEFAULT_DIM_CAP,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    caps: ResourceCaps = DEFAULT_CAPS,
) -> TestGraphReport:
    """Audit the test-graph inequality chi(H) >= conn + 1 + chi(T).

    T must be a complete graph on r >= 2 vertices or an even cycle; for
    those, chi(T) equals the order of the acting group, which is what makes
    the inequality an instance of the certified chain.
    """
    if is_complete(T) and T.n >= 2:
        t_kind, chi_t = "complete", T.n
    elif is_standard_cycle(T) and T.n % 2 == 0:
        t_kind, chi_t = "even-cycle", 2
    else:
        raise WrongShapeError(
            "test graphs supported here: complete (r >= 2) or even cycle"
        )
    if H.has_loops:
        raise WrongShapeError("target must be loop-free")
    chi_t_check, _ = chromatic_number(T, caps=caps)
    if chi_t_check != chi_t:
        raise InternalError("test-graph chromatic number mismatch")

    hp = build_hom_poset(T, H, caps=caps)
    gp = build_hom_instance(T, H, caps=caps) if hp.n else None
    poset: GPoset
    if gp is not None:
        poset = gp
    else:
        # empty poset still has a well-defined (empty) order complex
        poset = build_hom_instance_empty(T, hp, caps)
    komplex = order_complex(poset, dim_cap=dim_cap, caps=caps)
    conn = homological_connectivity(komplex, primes=primes)
    chi_h, _ = chromatic_number(H, caps=caps)
    bound = conn.value + 1 + chi_t
    holds = chi_h >= bound
    if not holds:
        raise TheoremViolationError(
            f"test-graph inequality failed: chi(H) = {chi_h} < {bound}"
        )
    return TestGraphReport(
        t_kind=t_kind,
        chi_t=chi_t,
        chi_h=chi_h,
        connectivity=conn,
        poset_size=hp.n,
        bound=bound,
        slack=chi_h - bound,
        holds=holds,
    )


def build_hom_instance_empty(T: Graph, hp: HomPoset, caps: ResourceCaps) -> HomGPoset:
    """Degenerate HomGPoset for an empty Hom poset (any action is fine)."""
    group = cyclic_group_for(T)
    action = [[] for _ in range(group.order)]
    return HomGPoset(hp, group, action, "empty", caps=caps)


def cyclic_group_for(T: Graph):
    from .algebra import cyclic_group

    if is_complete(T) and T.n >= 2:
        return cyclic_group(T.n)
    return cyclic_group(2)
