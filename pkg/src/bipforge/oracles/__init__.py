"""Exact small-instance oracles for the width and density parameters."""

from .containment import (
    find_binary_tree_subdivision,
    hadwiger,
    hajos,
    minor_test,
    path_subgraph,
    topological_minor_test,
)
from .cycles import CParams, c_param, largest_biclique, longest_odd_cycle
from .density import NablaWitness, nabla_r
from .widths import (
    Decomposition,
    ElimForest,
    degeneracy,
    pathwidth_exact,
    treedepth_exact,
    treewidth_exact,
    validate_decomposition,
    validate_elim_forest,
)

__all__ = [
    "CParams",
    "Decomposition",
    "ElimForest",
    "NablaWitness",
    "c_param",
    "degeneracy",
    "find_binary_tree_subdivision",
    "hadwiger",
    "hajos",
    "largest_biclique",
    "longest_odd_cycle",
    "minor_test",
    "nabla_r",
    "path_subgraph",
    "pathwidth_exact",
    "topological_minor_test",
    "treedepth_exact",
    "treewidth_exact",
    "validate_decomposition",
    "validate_elim_forest",
]
