"""swaproute: SWAP-network routing and connectivity-constrained compilation.

Routes permutations on constraint graphs within known round bounds, compiles
layered circuits onto arbitrary connectivity by SWAP insertion, partitions
graphs into low-diameter families, reduces composite topologies (cycle-grid,
brick wall) to grid routing, and checks everything against brute-force
oracles at small scale.
"""

from .circuits import Circuit, Gate, depth, one_qubit, swap_gate, two_qubit
from .compiler import (
    CompilationResult,
    check_compliance,
    compile_matching,
    compile_partition,
    verify_equivalence,
)
from .graphs import (
    Graph,
    Matching,
    diameter,
    induced_subgraph,
    is_connected,
    is_tree,
    maximal_matching,
    spanning_tree,
)
from .oracle import (
    BudgetExceeded,
    OracleBudget,
    brute_force_rt,
    brute_force_rt_max,
    doh_swap_circuit,
    hardness_reduction,
)
from .partition import PartitionFamilies, bottleneck_lower_bound, partition
from .perms import Permutation, decompose_two_involutions
from .protocols import (
    RoutingProtocol,
    apply_protocol,
    protocol_to_swap_circuit,
    swap_circuit_to_protocol,
    validate_protocol,
)
from .reduction import (
    EdgeClass,
    EdgeClassPartition,
    brick_wall_route,
    cycle_grid_partition,
    cycle_grid_route,
    lift_protocol,
)
from .routers import (
    complete_route,
    grid_route,
    path_route,
    route,
    tree_route,
)
from .topologies import TopologySpec, build, rt_upper_bound

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Circuit",
    "CompilationResult",
    "EdgeClass",
    "EdgeClassPartition",
    "Gate",
    "Graph",
    "Matching",
    "OracleBudget",
    "PartitionFamilies",
    "Permutation",
    "RoutingProtocol",
    "TopologySpec",
    "apply_protocol",
    "bottleneck_lower_bound",
    "brick_wall_route",
    "brute_force_rt",
    "brute_force_rt_max",
    "build",
    "check_compliance",
    "compile_matching",
    "compile_partition",
    "complete_route",
    "cycle_grid_partition",
    "cycle_grid_route",
    "decompose_two_involutions",
    "depth",
    "diameter",
    "doh_swap_circuit",
    "grid_route",
    "hardness_reduction",
    "induced_subgraph",
    "is_connected",
    "is_tree",
    "lift_protocol",
    "maximal_matching",
    "one_qubit",
    "partition",
    "path_route",
    "protocol_to_swap_circuit",
    "route",
    "rt_upper_bound",
    "spanning_tree",
    "swap_circuit_to_protocol",
    "swap_gate",
    "tree_route",
    "two_qubit",
    "validate_protocol",
    "verify_equivalence",
]
