"""sparsekit: structural sparse-graph toolkit.

Tree-depth with elimination-forest witnesses, low tree-depth
decompositions via transitive-fraternal augmentation, shallow-minor
density measures, decomposition-based subgraph counting, distance
colorings, neighborhood covers, and homomorphism utilities. Every fast
algorithm is cross-checked against an independent brute-force oracle at
desk scale in the test suite.
"""

from .applications import (
    Cover,
    dn_coloring,
    exact_distance_graph,
    induced_pattern_scan,
    is_k_choosable,
    max_odd_distance_set,
    neighborhood_cover,
    verify_cover,
    verify_dn_coloring,
)
from .counting import (
    CountQuery,
    Sunflower,
    count_bruteforce,
    count_ltd,
    verify_sunflower,
)
from .decomposition import (
    ClusterCover,
    LtdDecomposition,
    chi_p_bruteforce,
    cluster_cover,
    ltd_coloring,
    tf_augment,
    verify_cluster_cover,
    verify_ltd,
)
from .density import (
    ImmersionModel,
    MinorModel,
    TopoModel,
    density_profile,
    grad,
    imm_grad,
    nabla0,
    nabla0_bruteforce,
    top_grad,
)
from .errors import (
    BudgetExceededError,
    ParseError,
    SizeLimitError,
    SparsekitError,
    ValidationError,
)
from .generators import (
    bounded_degree_graph,
    generate,
    girth5_graph,
    random_tree,
    triangulation,
)
from .graphs import (
    Graph,
    Orientation,
    bfs_distances,
    chromatic_number,
    clique_number,
    connected_components,
    degeneracy,
    degeneracy_orientation,
    girth,
    induced_subgraph,
    named,
    parse_edge_list,
    serialize_edge_list,
    subdivide,
)
from .homomorphism import core, dual_check, hom_exists, t_approximation_check
from .treedepth import (
    Coloring,
    EliminationForest,
    centered_coloring_from_forest,
    dfs_height_bounds,
    minimum_centered_palette,
    minimum_ranking_palette,
    treedepth_at_most,
    treedepth_exact,
    verify_centered_coloring,
    verify_elimination_forest,
    verify_vertex_ranking,
)

__version__ = "0.1.0"
