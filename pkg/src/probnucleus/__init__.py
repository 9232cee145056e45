"""Local, global and weakly-global (3,4)-nucleus decompositions of probabilistic graphs."""

from .deterministic import WorldGraph, det_scores, is_k_nucleus, max_k_nucleus_containing
from .estimators import (
    GlobalNucleusDecomposition,
    LocalNucleusDecomposition,
    WeaklyGlobalNucleusDecomposition,
)
from .global_nuclei import fg_decompose, wg_decompose
from .graph import (
    BadProbability,
    DuplicateEdge,
    GraphInputError,
    ParseError,
    ProbabilisticGraph,
    SelfLoop,
    SubgraphView,
    dump_edge_list,
    induced_edge_subgraph,
    load_edge_list,
)
from .local import Nucleus, NucleusScores, all_nuclei, assemble_nuclei, compute_scores
from .metrics import pcc, pd
from .motifs import ExtensionProfile, TriangleIndex, build_index
from .oracle import BudgetError, OracleBudget, exact_tail, exact_tails
from .sampling import DomainError, SamplingConfig, estimate_tails, required_samples
from .support import ApproxMethod, Hyperparams, SupportDistribution, dp_distribution, max_k

__version__ = "0.1.0"

__all__ = [
    "all_nuclei",
    "ApproxMethod",
    "assemble_nuclei",
    "BadProbability",
    "BudgetError",
    "build_index",
    "compute_scores",
    "det_scores",
    "DomainError",
    "dp_distribution",
    "dump_edge_list",
    "DuplicateEdge",
    "estimate_tails",
    "exact_tail",
    "exact_tails",
    "ExtensionProfile",
    "fg_decompose",
    "GlobalNucleusDecomposition",
    "GraphInputError",
    "Hyperparams",
    "induced_edge_subgraph",
    "is_k_nucleus",
    "load_edge_list",
    "LocalNucleusDecomposition",
    "max_k",
    "max_k_nucleus_containing",
    "Nucleus",
    "NucleusScores",
    "OracleBudget",
    "ParseError",
    "pcc",
    "pd",
    "ProbabilisticGraph",
    "required_samples",
    "SamplingConfig",
    "SelfLoop",
    "SubgraphView",
    "SupportDistribution",
    "TriangleIndex",
    "WeaklyGlobalNucleusDecomposition",
    "wg_decompose",
    "WorldGraph",
]
