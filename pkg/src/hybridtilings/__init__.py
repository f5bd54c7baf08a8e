"""Exact tiling counts for square-lattice regions with diagonal cuts.

The package builds cell regions, turns them into tile-adjacency graphs,
counts weighted perfect matchings with three independent exact backends,
applies count-preserving local rewrites, and evaluates closed-form product
formulas, with a CLI wrapping all of it.
"""

from .graphs import (
    EmbeddingError,
    GraphError,
    InternalInvariantError,
    PMGraph,
    add_pendants,
    aztec_rectangle,
    baseless_aztec_rectangle,
    connected_sum,
    delete_vertices,
    disjoint_union,
    flip_classes,
    graph_from_json_dict,
    graph_to_json_dict,
    hexagon_graph,
    make_graph,
    odd_aztec_rectangle,
    prune_forced_edges,
    remove_vertices,
    semihexagon,
)
from .counting import (
    count_bruteforce,
    count_fkt,
    count_permanent,
    enumerate_tilings,
)
from .regions import (
    DiagonalSpec,
    Region,
    RegionError,
    RegionStats,
    balancing_holds,
    build_region,
    dual_graph,
    parse_spec_string,
    region_stats,
    stats_to_json,
    strip_region,
    strip_stats,
)
from .formulas import (
    FormulaError,
    FormulaResult,
    delta_op,
    hexagon_count,
    krattenthaler,
    quasi_octagon_count,
    semihex_dented,
    special_cases,
    unequal_width_sum,
)
from .transforms import (
    TransformPair,
    composite_transform,
    hexagon_pair_reduce,
    otrans_a,
    otrans_b,
    star_scale,
    t1_transfer,
    t6_transfer,
    urban_renewal,
    vertex_split,
)
from .verify import (
    SweepReport,
    full_verify,
    iter_octagon_shapes,
    oracle_count,
    resolve_readings,
    sweep_backends,
    sweep_dented_semihexagon,
    sweep_equal_width,
    sweep_special_cases,
    sweep_thinned_row,
    sweep_transforms,
    sweep_unequal_width,
    transform_instance,
)
from .render import render_region_svg

__version__ = "0.1.0"
