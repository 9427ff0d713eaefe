"""Orientations of graphs with extremal Hermitian adjacency spectra.

Every graph admits an orientation whose Hermitian adjacency matrix has
largest eigenvalue at most the largest root of the matching polynomial (and
another orientation whose spectral radius is at least it). This package
constructs such orientations by a greedy conditional-expectation walk over
edge signs and verifies the identities that make the construction work:
the orientation-averaged characteristic polynomial equals the matching
polynomial (exactly), sibling conditional polynomials share a common
interlacer, and walk-tree truncations certify the universal-cover bound.
"""

__version__ = "0.1.0"

from .errors import CapExceededError, EdgeListError, InvariantError, NotRealRootedError
from .graphs import (
    Graph,
    Orientation,
    complete_bipartite_graph,
    complete_graph,
    components,
    cycle_graph,
    graph_from_edges,
    induced_subgraph,
    is_connected,
    parse_edge_list,
    path_graph,
    petersen_graph,
    serialize_edge_list,
    star_graph,
    switch,
)
from .polynomials import (
    Polynomial,
    common_interlacing,
    count_real_roots,
    interlaces,
    is_real_rooted,
    largest_root,
    max_abs_root,
    real_roots,
)
from .spectral import (
    HermitianMatrix,
    adjacency_char_poly,
    char_poly_exact,
    eigenvalues,
    eigenvalues_for_orientations,
    hermitian_matrix,
    spectral_radius,
)
from .matchings import matching_counts, matching_polynomial, matching_radius
from .orientations import (
    AssignmentNode,
    BruteForceExtremes,
    ConditionalTree,
    FamilyCheckReport,
    WitnessReport,
    assignment_node,
    block_sum_reconstruction,
    brute_force_extremes,
    conditional_tree,
    expected_charpoly_brute,
    expected_charpoly_fast,
    greedy_orient_max,
    greedy_orient_min,
    verify_interlacing_family,
    witness_check,
    witness_vectors,
)
from .cover import (
    CoverTree,
    GapCertificate,
    certify_gap,
    cover_radius_lower,
    diameter,
    is_tree,
    truncated_cover,
    tree_spectral_radius,
)

__all__ = [name for name in dir() if not name.startswith("_")]
