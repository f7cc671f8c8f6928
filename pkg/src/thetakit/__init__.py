"""Theta detection, sparse tree growth, and tower-sized bound auditing for graphs."""

__version__ = "0.1.0"

from .graphs import (
    ABTreeCert,
    Digraph,
    Graph,
    PathFamily,
    ab_tree_size,
    ab_tree_violation,
    are_anticomplete,
    build_digraph,
    build_graph,
    induced_subgraph,
    is_ab_tree,
    is_clique,
    is_induced_cycle,
    is_induced_path,
    is_stable_set,
    iter_bits,
    mask_of,
    path_family_violation,
    relabel,
    validate_path_family,
)
from .generators import (
    ab_tree_cert,
    ab_tree_graph,
    canonical,
    complement,
    complete_bipartite,
    complete_graph,
    constellation,
    cycle_graph,
    disjoint_union,
    enumerate_constellations,
    line_graph,
    path_graph,
    petersen,
    prism_graph,
    random_graph,
    random_subdivision,
    subdivide,
    theta_graph,
    wall,
)
from .detectors import (
    CapExceeded,
    ConstellationWitness,
    Embedding,
    ThetaWitness,
    WallLineReport,
    clique_number,
    constellation_witness_violation,
    embedding_violation,
    excludes_wall_line_graphs,
    find_biclique,
    find_constellation,
    find_induced,
    find_prism,
    find_theta,
    is_constricted,
    is_embedding,
    is_theta_witness,
    max_path_fan,
    three_in_a_tree,
    theta_witness_violation,
)
from .separability import (
    PathPacking,
    SeparabilityReport,
    max_internally_disjoint_paths,
    separability,
)
from .treewidth import (
    TreeDecomposition,
    treewidth_dp,
    treewidth_exact,
    validate_decomposition,
)
from .bigconst import (
    SigmaCheck,
    SigmaReport,
    TowerInt,
    digit_estimate,
    evaluate,
    main_constant,
    nat,
    normalize,
    sep_constant,
    sigma,
    to_tower_str,
    tower_compare,
    tree_constants,
    verify_sigma_inequalities,
)
from .extraction import (
    Biclique,
    FixedThresholds,
    PaperThresholds,
    PreconditionWitness,
    Success,
    ThresholdUnmet,
    TraceStep,
    anticomplete_family,
    biclique_violation,
    digraph_fanout,
    digraph_stable,
    eh_extract,
    embed_forest,
    grow_ab_tree,
    is_biclique,
    ramsey_extract,
    witness_violation,
)
