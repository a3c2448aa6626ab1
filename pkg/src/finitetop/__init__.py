"""Finite topological spaces, their calculus, and exact-sequence bookkeeping."""

from .action import (
    ActionOverX,
    IdealAssignment,
    filtration_of_action,
    is_tight,
    minimal_ideals,
    pushforward,
    reconstruct,
    restrict,
    subquotient_support,
)
from .completion import (
    CompletionSpace,
    build_yprime,
    from_discontinuous,
    neighborhood_filter_embedding,
    to_discontinuous,
)
from .enumeration import (
    are_homeomorphic,
    canonical_form,
    census,
    connected_catalog,
    enumerate_labeled_t0,
    enumerate_labeled_topologies,
    space_from_canonical,
)
from .errors import FinitetopError, InputFormatError
from .intmat import IntMatrix, kernel_basis, smith_normal_form, solve
from .ktheory import (
    FGAbelianGroup,
    FiltratedKDatum,
    GradedGroup,
    GroupHom,
    SixTermCycle,
    cokernel,
    image,
    is_exact_at,
    kernel,
    two_point_sequence,
    vanishing_propagation,
    verify_datum,
    verify_six_term,
)
from .lattice import (
    FiniteDistributiveLattice,
    LatticeMap,
    continuous_to_lattice_map,
    lattice_map_to_continuous,
    open_set_lattice,
    preserves_finite_meets,
    preserves_joins,
)
from .spaces import (
    ContinuousMap,
    Filtration,
    FiniteSpace,
    LocallyClosedSet,
    Preorder,
    alexandrov_topology,
    hasse_dot,
    space_from_edges,
    validate_topology,
)

__all__ = [
    "ActionOverX",
    "CompletionSpace",
    "ContinuousMap",
    "FGAbelianGroup",
    "FiltratedKDatum",
    "Filtration",
    "FiniteDistributiveLattice",
    "FiniteSpace",
    "FinitetopError",
    "GradedGroup",
    "GroupHom",
    "IdealAssignment",
    "InputFormatError",
    "IntMatrix",
    "LatticeMap",
    "LocallyClosedSet",
    "Preorder",
    "SixTermCycle",
    "alexandrov_topology",
    "are_homeomorphic",
    "build_yprime",
    "canonical_form",
    "census",
    "cokernel",
    "connected_catalog",
    "continuous_to_lattice_map",
    "enumerate_labeled_t0",
    "enumerate_labeled_topologies",
    "filtration_of_action",
    "from_discontinuous",
    "hasse_dot",
    "image",
    "is_exact_at",
    "is_tight",
    "kernel",
    "kernel_basis",
    "lattice_map_to_continuous",
    "minimal_ideals",
    "neighborhood_filter_embedding",
    "open_set_lattice",
    "preserves_finite_meets",
    "preserves_joins",
    "pushforward",
    "reconstruct",
    "restrict",
    "smith_normal_form",
    "solve",
    "space_from_canonical",
    "space_from_edges",
    "subquotient_support",
    "to_discontinuous",
    "two_point_sequence",
    "validate_topology",
    "vanishing_propagation",
    "verify_datum",
    "verify_six_term",
]
