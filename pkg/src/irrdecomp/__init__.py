"""Locally irregular edge decompositions of graphs.

A graph is locally irregular when every edge joins vertices of different
degrees.  The package finds decompositions of a graph's edge set into few
locally irregular subgraphs, certifies them, and computes exact optima for
small graphs.
"""
from .bipartite import (
    BalancedForest,
    PathSystem,
    color_balanced_forest,
    decompose_A_even,
    decompose_bipartite,
    decompose_bipartite_even,
    decompose_path_plus_cycle,
    delete_conflict_path,
    make_A_even,
    make_B_almost_odd,
    path_system,
)
from .degenerate import (
    BipartitePartitionFamily,
    ExactDecomposer,
    FactorDecomposer,
    HighDegreeDecomposer,
    chi_bound_degenerate,
    decompose_degenerate_even,
    decompose_general,
    degenerate_class_bound,
    extend_even_bipartite,
    general_bound,
    halve_neighbors,
    part_bound,
    split_degenerate_min_degree,
)
from .errors import (
    ExceptionalGraphError,
    GraphError,
    InfeasibleTarget,
    InsufficientConnectivity,
    ParseError,
    SolverFailed,
)
from .exact import EXCEPTIONAL, chi_irr_exact, enumerate_connected_graphs, enumerate_graphs, exact_decomposition
from .factor import FactorWitness, ResidueTarget, decompose_16ec_bipartite, mod_k_factor, residue_balance_check
from .graph import (
    Bipartition,
    Graph,
    OddCycle,
    almost_balanced_orientation,
    bipartition,
    bridges,
    components,
    degeneracy,
    degeneracy_order,
    edge_connectivity,
    parse_edge_list,
    serialize_edge_list,
    shortest_cycle_through,
)
from .irregularity import (
    Certificate,
    Decomposition,
    classify_exceptional,
    is_exceptional,
    is_locally_irregular,
    parse_decomposition,
    verify,
)
from .parity import find_even_parity_edge, find_even_parity_path2, reduce_odd_size

__version__ = "0.1.0"
