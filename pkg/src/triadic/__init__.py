"""Wedge sampling for triadic graph measures.

Fast estimates of global, local, degree-wise and binned clustering
coefficients, triangle counts and uniform triangle samples, each with a
Hoeffding error guarantee, plus an exact enumeration oracle and the Doulion
sparsification baseline for comparison.
"""
from .bench import EstimatorSpec, TrialReport, run_trials, speedup_report
from .doulion import SparsifyParams, doulion_global_cc, doulion_local_cc, doulion_triangle_estimate, sparsify
from .errors import (
    DegenerateDegreeError,
    EdgeListParseError,
    EmptyGraphError,
    GraphCacheError,
    InsufficientClosureError,
    InvalidGraphError,
    NoSuchDegreeError,
    NoWedgesError,
    PreconditionError,
    TriadicError,
    UndefinedStatisticError,
)
from .exact import (
    ExactTriadStats,
    Triangle,
    binned_wedge_cc,
    count_triangles,
    enumerate_triangles,
    exact_stats,
    list_triangles,
    triangle_degree_ratio_fraction,
)
from .graph import (
    DegreeIndex,
    Graph,
    degree_index,
    has_edge,
    load_edge_list,
    load_graph,
    random_neighbor_pair,
    read_graph_cache,
    total_wedges,
    wedge_count,
    write_graph_cache,
)
from .sampling import (
    DEFAULT_DELTA,
    DEFAULT_SAMPLES,
    BinEstimate,
    Estimate,
    SamplePlan,
    TriangleSample,
    Wedge,
    WedgeDistribution,
    build_wedge_distribution,
    error_bound,
    estimate_binned_cc,
    estimate_degree_cc,
    estimate_global_cc,
    estimate_local_cc,
    estimate_T_d,
    estimate_triangle_count,
    log2_bins,
    sample_size,
    sample_uniform_triangles,
    sample_uniform_wedge,
    triangle_sample_ratio_fraction,
)

__version__ = "0.1.0"
