"""Directed k-spanner toolkit.

Flow-based LP relaxation of the minimum directed k-spanner problem,
randomized rounding with shortest-path-tree sampling, exact verification
and optimum oracles, and the cut-structure checks that justify the
construction on small instances.
"""

from .arborescence import (
    Arborescence,
    Claim1Result,
    Claim2Result,
    ClaimContext,
    check_claim1,
    check_claim2,
    enumerate_arborescences,
    shortest_path_tree_cut,
)
from .errors import (
    BadSpec,
    DirspanError,
    DuplicateEdge,
    ExplosionCap,
    GraphError,
    GraphSyntaxError,
    IncompleteEnumeration,
    IndexOutOfRange,
    NegativeLength,
    NotReachable,
    NotUnitLength,
    NumericalFailure,
    PathExplosion,
    SelfLoop,
    TooLarge,
)
from .generate import GenSpec, generate_instance, parse_gen_spec
from .graph import (
    INF,
    INWARD,
    OUTWARD,
    DiGraph,
    DistanceMap,
    InducedSubgraph,
    SpTree,
    build_graph,
    distance_matrix,
    induced_subgraph,
    reverse_graph,
    shortest_path_tree,
    shortest_paths,
    weakly_connected_components,
)
from .io import dumps_report, parse_graph, serialize_graph
from .lp import (
    LpModel,
    LpSolution,
    build_layered_lp_unit,
    build_lp,
    check_solution,
    export_lp_text,
    lp_lower_bound_check,
    solve_lp,
    violated_rows,
)
from .paths import DemandPaths, PathCaps, covered_vertices, enumerate_demand_paths, stretch_budget
from .pipeline import Caps, RunConfig, caps_from_env, run_claims, run_oracle, run_solve, trial_seed
from .rounding import (
    CostReport,
    RoundingParams,
    SpannerResult,
    build_spanner,
    edge_inclusion_probs,
    expected_cost_report,
    round_edges,
    sample_tree_roots,
    select_alpha,
)
from .verify import (
    OptResult,
    SpannerCheck,
    all_pairs_spanner_check,
    brute_force_opt,
    demand_distance_rows,
    edge_check_equals_allpairs_check,
    is_k_spanner,
)

__version__ = "0.1.0"

__all__ = [
    "Arborescence",
    "BadSpec",
    "Caps",
    "Claim1Result",
    "Claim2Result",
    "ClaimContext",
    "CostReport",
    "DemandPaths",
    "DiGraph",
    "DirspanError",
    "DistanceMap",
    "DuplicateEdge",
    "ExplosionCap",
    "GenSpec",
    "GraphError",
    "GraphSyntaxError",
    "IncompleteEnumeration",
    "IndexOutOfRange",
    "InducedSubgraph",
    "INF",
    "INWARD",
    "LpModel",
    "LpSolution",
    "NegativeLength",
    "NotReachable",
    "NotUnitLength",
    "NumericalFailure",
    "OptResult",
    "OUTWARD",
    "PathCaps",
    "PathExplosion",
    "RoundingParams",
    "RunConfig",
    "SelfLoop",
    "SpannerCheck",
    "SpannerResult",
    "SpTree",
    "TooLarge",
    "all_pairs_spanner_check",
    "brute_force_opt",
    "build_graph",
    "build_layered_lp_unit",
    "build_lp",
    "build_spanner",
    "caps_from_env",
    "check_claim1",
    "check_claim2",
    "check_solution",
    "covered_vertices",
    "demand_distance_rows",
    "distance_matrix",
    "dumps_report",
    "edge_check_equals_allpairs_check",
    "edge_inclusion_probs",
    "enumerate_arborescences",
    "enumerate_demand_paths",
    "expected_cost_report",
    "export_lp_text",
    "generate_instance",
    "induced_subgraph",
    "is_k_spanner",
    "lp_lower_bound_check",
    "parse_gen_spec",
    "parse_graph",
    "reverse_graph",
    "round_edges",
    "run_claims",
    "run_oracle",
    "run_solve",
    "sample_tree_roots",
    "select_alpha",
    "serialize_graph",
    "shortest_path_tree",
    "shortest_path_tree_cut",
    "shortest_paths",
    "solve_lp",
    "stretch_budget",
    "trial_seed",
    "violated_rows",
    "weakly_connected_components",
]
