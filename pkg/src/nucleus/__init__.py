"""(r,s)-nucleus decomposition: κ peeling, the forest of nuclei, and density analytics."""

from ._backend import kernels as _kernels
from .cliques import (
    CliqueIndex,
    Supergraph,
    build_supergraph,
    count_r_cliques,
    enumerate_r_cliques,
    s_cliques_containing,
    s_degree,
)
from .errors import (
    CapacityError,
    ConsistencyError,
    GraphParseError,
    InvariantError,
    NucleusError,
    OracleGuardError,
    UndefinedDensityError,
    UnsupportedParameterError,
)
from .forest import (
    ForestView,
    NucleusForest,
    NucleusNode,
    build_forest,
    check_invariants,
    contract_chains,
    decompose,
    filter_by_size,
    nucleus_vertices,
)
from .graph import Graph, degeneracy_order, induced_density, load_graph, random_graph, write_edge_list
from .metrics import density_histogram, overlap_analysis, size_density_scatter
from .peel import KappaAssignment, cost_predictor, set_k

BACKEND = _kernels.NAME

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CapacityError",
    "CliqueIndex",
    "ConsistencyError",
    "ForestView",
    "Graph",
    "GraphParseError",
    "InvariantError",
    "KappaAssignment",
    "NucleusError",
    "NucleusForest",
    "NucleusNode",
    "OracleGuardError",
    "Supergraph",
    "UndefinedDensityError",
    "UnsupportedParameterError",
    "build_forest",
    "build_supergraph",
    "check_invariants",
    "contract_chains",
    "cost_predictor",
    "count_r_cliques",
    "decompose",
    "degeneracy_order",
    "density_histogram",
    "enumerate_r_cliques",
    "filter_by_size",
    "induced_density",
    "load_graph",
    "nucleus_vertices",
    "overlap_analysis",
    "random_graph",
    "s_cliques_containing",
    "s_degree",
    "set_k",
    "size_density_scatter",
    "write_edge_list",
]
