"""임계 노드 문제(CNP) 솔버 모듈"""

from .budget import SearchBudget
from .cbns import (
    LargeComponentIndex,
    NodeWeights,
    best_reinsertion,
    cbns,
    component_exchange,
    large_threshold,
    select_removal_node,
)
from .cccnp import CCParams, CCResult, LevelRecord, construct_initial, maccc
from .errors import (
    CNPError,
    ContractError,
    GraphFormatError,
    GraphRangeError,
    InitializationError,
    SizeGuardError,
    SolutionFormatError,
)
from .graph import ComponentLabeling, Graph, components_of, dump_graph, load_graph, load_graph_file
from .memetic import (
    BackbonePartition,
    Individual,
    MacnpParams,
    MacnpResult,
    Population,
    double_backbone_crossover,
    repair,
    init_population,
    macnp,
    partition_backbones,
    pool_update,
    solution_distance,
)
from .solution import (
    ExcessObjective,
    PairwiseObjective,
    SolutionState,
    evaluate,
    evaluate_excess,
    evaluate_pairwise,
    read_solution,
    write_solution,
)

__all__ = [
    "SearchBudget",
    "LargeComponentIndex",
    "NodeWeights",
    "best_reinsertion",
    "cbns",
    "component_exchange",
    "large_threshold",
    "select_removal_node",
    "CCParams",
    "CCResult",
    "LevelRecord",
    "construct_initial",
    "maccc",
    "CNPError",
    "ContractError",
    "GraphFormatError",
    "GraphRangeError",
    "InitializationError",
    "SizeGuardError",
    "SolutionFormatError",
    "ComponentLabeling",
    "Graph",
    "components_of",
    "dump_graph",
    "load_graph",
    "load_graph_file",
    "BackbonePartition",
    "Individual",
    "MacnpParams",
    "MacnpResult",
    "Population",
    "double_backbone_crossover",
    "repair",
    "init_population",
    "macnp",
    "partition_backbones",
    "pool_update",
    "solution_distance",
    "ExcessObjective",
    "PairwiseObjective",
    "SolutionState",
    "evaluate",
    "evaluate_excess",
    "evaluate_pairwise",
    "read_solution",
    "write_solution",
]
