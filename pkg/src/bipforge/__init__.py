"""Bipartite subgraphs that keep minors, walls and half the edges."""

__version__ = "0.1.0"

from .errors import (
    BipforgeError,
    CapExceeded,
    ConfigError,
    DomainError,
    GraphParseError,
    ValidationError,
)
from .generators import (
    SplitMix64,
    WallCoords,
    binary_tree,
    complete,
    complete_bipartite,
    cycle,
    edgeless,
    family,
    grid,
    path,
    random_graph,
    random_lengths,
    subdivide,
    wall,
)
from .graph import (
    Colour,
    Graph,
    OddCycleWitness,
    SubgraphRef,
    TwoColouring,
    assemble,
    is_bipartite,
    longest_path,
    radius,
    switch,
    two_colour,
)
from .minors import (
    MinorModel,
    ShallowModel,
    TopologicalModel,
    bipartize_minor,
    bipartize_shallow,
    bipartize_topological,
    find_minor_model,
    prune_model,
)
from .switching import PathSystem, SwitchResult, classify_path, half_cut, select_paths
from .walls import (
    Mismatch,
    SubdividedWall,
    extract_bipartite_wall,
    import_wall_subdivision,
    verify_wall_subdivision,
)
