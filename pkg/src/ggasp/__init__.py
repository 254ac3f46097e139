"""Group activity selection on social networks: stability checkers, exact
solvers and hardness-construction generators."""
from .model import (
    VOID,
    VOID_ALT,
    Alternative,
    Assignment,
    Comparison,
    Instance,
    InstanceError,
    Topology,
    TopologyTag,
    build_instance,
    classify_topology,
    is_feasible_coalition,
    make_instance,
    prefers,
    rank_order,
)
from .oracle import (
    OracleBoundError,
    SolveOutcome,
    Status,
    enumerate_feasible_assignments,
    oracle_count_stable,
    oracle_find_stable,
)
from .stability import (
    BlockingCertificate,
    Concept,
    Deviation,
    StabilityReport,
    analyze,
    check_assignment_feasible,
    check_core_forest,
    check_individually_rational,
    find_ns_deviation,
    find_strong_block,
    is_stable,
)
from .tree_solvers import solve_core_copyable_forest, solve_ns_copyable_forest

__all__ = [
    "VOID",
    "VOID_ALT",
    "Alternative",
    "Assignment",
    "BlockingCertificate",
    "Comparison",
    "Concept",
    "Deviation",
    "Instance",
    "InstanceError",
    "OracleBoundError",
    "SolveOutcome",
    "StabilityReport",
    "Status",
    "Topology",
    "TopologyTag",
    "analyze",
    "build_instance",
    "check_assignment_feasible",
    "check_core_forest",
    "check_individually_rational",
    "classify_topology",
    "enumerate_feasible_assignments",
    "find_ns_deviation",
    "find_strong_block",
    "is_feasible_coalition",
    "is_stable",
    "make_instance",
    "oracle_count_stable",
    "oracle_find_stable",
    "prefers",
    "rank_order",
    "solve_core_copyable_forest",
    "solve_ns_copyable_forest",
]
