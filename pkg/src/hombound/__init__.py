"""Exact topological lower bounds for graph chromatic numbers.

Builds Hom posets and compatibility graphs under free group actions, computes
homological connectivity of order complexes over prime fields, constructs and
verifies the coloring-induced equivariant map, and emits machine-checkable
bound certificates.
"""

__version__ = "0.1.0"

from .algebra import FiniteGroup, GPoset, cyclic_group, is_free_action, make_gposet, orbit, orbits
from .caps import DEFAULT_CAPS, ResourceCaps, caps_from_env
from .certify import (
    BoundCertificate,
    LambdaMap,
    LambdaReport,
    TestGraphReport,
    bound_certificate,
    build_hom_instance,
    construct_lambda,
    test_graph_check,
    verify_lambda,
)
from .coloring import chromatic_number, dsatur_upper_bound, greedy_clique
from .complexes import (
    BettiVector,
    ConnectivityReport,
    IndexInterval,
    SimplicialComplex,
    build_EnG,
    homological_connectivity,
    homology_ranks,
    index_interval,
    order_complex,
    poset_dimension,
)
from .graphs import (
    Coloring,
    Graph,
    VertexMap,
    complete_graph,
    cycle_graph,
    is_homomorphism,
    kneser_graph,
    petersen_graph,
)
from .homposets import (
    HomGPoset,
    HomPoset,
    attach_cyclic_action,
    attach_reflection_action,
    build_compat_graph,
    build_hom_poset,
    check_loops,
    projection_hom,
    verify_hom_elements,
)
from .kernels import BACKEND as KERNEL_BACKEND

__all__ = [
    "__version__",
    "KERNEL_BACKEND",
    "FiniteGroup",
    "GPoset",
    "cyclic_group",
    "is_free_action",
    "make_gposet",
    "orbit",
    "orbits",
    "DEFAULT_CAPS",
    "ResourceCaps",
    "caps_from_env",
    "BoundCertificate",
    "LambdaMap",
    "LambdaReport",
    "TestGraphReport",
    "bound_certificate",
    "build_hom_instance",
    "construct_lambda",
    "test_graph_check",
    "verify_lambda",
    "chromatic_number",
    "dsatur_upper_bound",
    "greedy_clique",
    "BettiVector",
    "ConnectivityReport",
    "IndexInterval",
    "SimplicialComplex",
    "build_EnG",
    "homological_connectivity",
    "homology_ranks",
    "index_interval",
    "order_complex",
    "poset_dimension",
    "Coloring",
    "Graph",
    "VertexMap",
    "complete_graph",
    "cycle_graph",
    "is_homomorphism",
    "kneser_graph",
    "petersen_graph",
    "HomGPoset",
    "HomPoset",
    "attach_cyclic_action",
    "attach_reflection_action",
    "build_compat_graph",
    "build_hom_poset",
    "check_loops",
    "projection_hom",
    "verify_hom_elements",
]
