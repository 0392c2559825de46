"""Exact transportation cost (Wasserstein-1) norms on finite metric graphs."""
from .closed_forms import (
    AdditionCounter,
    bridge_norm,
    bridge_reduce,
    cycle_norm,
    cycle_solution,
    tree_norm,
    tree_norm_leaf_peel,
    tree_optimal_plan,
)
from .chains import boundary_apply, l1_norm, path_vector, plan_to_flow
from .errors import *  # noqa: F401,F403
from .graph import (
    DistanceMatrix,
    MetricGraph,
    SpanningTree,
    build_graph,
    count_spanning_trees,
    enumerate_spanning_trees,
    find_bridges,
    fundamental_cycles,
    shortest_path_metric,
)
from .kernels import BACKEND
from .oracle import (
    DualCertificate,
    FiniteMetricSpace,
    dual_certificate,
    exhaustive_plan_search,
    metric_space,
    metric_space_norm,
    oracle_norm_by_trees,
)
from .plans import (
    flow_to_edge_plan,
    min_transport_plan_tree,
    optimal_simultaneous_plan,
    plan_cost,
    purify_plan,
    validate_plan,
)
from .solver import (
    OptimalFlowResult,
    initial_tree_flow,
    minimize_l1_flow,
    tree_support_extract,
    weighted_median_linesearch,
)
from .vectors import CycleVector, EdgeFlow, MassFunction, TransportPlan

__version__ = "0.1.0"
