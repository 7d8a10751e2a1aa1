"""plancanon: canonical codes and isomorphism testing for planar graphs.

The pipeline decomposes a planar graph into its Block-Cut tree, each block
into its SPQR tree, codes triconnected skeletons with Weinberg's walk, and
assembles a complete canonical invariant bottom-up. A companion exporter
serializes every intermediate structure (trees, walks, attachment numbers)
for downstream consumers.
"""

from .blockcut import (
    Block,
    BlockCutTree,
    block_cut_tree,
    centroid_candidates,
    centroid_root,
    components,
)
from .canon import (
    LabelMap,
    bi_code,
    cut_subtree_codes,
    graph_code,
    leaf_code,
    p_code,
    q_code,
    s_code,
    theta,
)
from .codes import Code, parse_code
from .generators import GenSpec, gen_p3r, gen_random_planar, gen_random_tree, scramble
from .graph import (
    Graph,
    Graph6ParseError,
    GraphValidationError,
    Permutation,
    apply_permutation,
    parse_edge_list,
    parse_graph6,
    to_edge_list,
    to_graph6,
)
from .iso import WlColoring, brute_force_isomorphic, is_isomorphic, wl1_histogram
from .planarity import Dart, NotPlanarError, RotationSystem, embed, is_planar, mirror
from .spqr import Skeleton, SkeletonEdge, SpqrNode, SpqrTree, glue, spqr_tree
from .weinberg import Walk, kappa_of, tri_code, weinberg_walk

__all__ = [
    "Block",
    "BlockCutTree",
    "Code",
    "Dart",
    "GenSpec",
    "Graph",
    "Graph6ParseError",
    "GraphValidationError",
    "LabelMap",
    "NotPlanarError",
    "Permutation",
    "RotationSystem",
    "Skeleton",
    "SkeletonEdge",
    "SpqrNode",
    "SpqrTree",
    "Walk",
    "WlColoring",
    "apply_permutation",
    "bi_code",
    "block_cut_tree",
    "brute_force_isomorphic",
    "centroid_candidates",
    "centroid_root",
    "components",
    "cut_subtree_codes",
    "embed",
    "gen_p3r",
    "gen_random_planar",
    "gen_random_tree",
    "glue",
    "graph_code",
    "is_isomorphic",
    "is_planar",
    "kappa_of",
    "leaf_code",
    "mirror",
    "p_code",
    "parse_code",
    "parse_edge_list",
    "parse_graph6",
    "q_code",
    "s_code",
    "scramble",
    "spqr_tree",
    "theta",
    "to_edge_list",
    "to_graph6",
    "tri_code",
    "weinberg_walk",
    "wl1_histogram",
]
