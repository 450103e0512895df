"""Densest k-subgraph dynamic programs for interval and proper interval graphs."""

from .clique_structure import CliqueSequence, StairSet, maximal_cliques, stairs
from .dp import NEG_INF, ClusterSolution, DpTable
from .errors import (
    BudgetError,
    KClusterError,
    NotProperError,
    ParseError,
    ReconstructionError,
    StructureError,
)
from .interval import solve_interval, split_bounds_interval
from .interval_model import (
    IntervalRealization,
    NirForm,
    SnirForm,
    edge_count,
    is_proper,
    parse_realization,
    to_nir,
    to_snir,
)
from .oracle import brute_force_cliques, brute_force_kcluster, connectivity_check
from .proper import solve_proper, split_bounds_proper

__all__ = [
    "BudgetError",
    "CliqueSequence",
    "ClusterSolution",
    "DpTable",
    "IntervalRealization",
    "KClusterError",
    "NEG_INF",
    "NirForm",
    "NotProperError",
    "ParseError",
    "ReconstructionError",
    "SnirForm",
    "StairSet",
    "StructureError",
    "brute_force_cliques",
    "brute_force_kcluster",
    "connectivity_check",
    "edge_count",
    "maximal_cliques",
    "parse_realization",
    "solve_interval",
    "solve_proper",
    "split_bounds_interval",
    "split_bounds_proper",
    "stairs",
    "to_nir",
    "to_snir",
    "is_proper",
]
