"""Low-stretch spanning-tree backbones for layout-agnostic edge bundling.

Pipeline: extract a low-stretch spanning tree from a graph, route every
non-tree edge through the tree (LCA path queries), group the resulting
segments into bundles keyed by backbone edge, lay out the backbone, and
export a self-contained scene for an interactive viewer.
"""

from .bundles import (
    BundleIndex,
    BundleStats,
    build_bundles,
    bundle_stats,
    bundles_of_edge,
    edges_of_bundle,
)
from .errors import (
    EdgeListParseError,
    EmptyGraphError,
    LsqtError,
    NotARemainderEdgeError,
    NotATreeEdgeError,
    NotConnectedError,
    SceneValidationError,
    SizeLimitError,
)
from .graph import (
    Graph,
    connected_components,
    grid_graph,
    parse_edge_list,
    parse_edge_list_file,
    random_connected_graph,
    to_edge_list_text,
)
from .layout import (
    EdgeSpline,
    ForceParams,
    LayoutResult,
    layout_force,
    layout_radial,
    splines,
)
from .metrics import (
    StretchReport,
    average_stretch,
    brute_force_best_tree,
    stretch_report,
)
from .pipeline import PipelineResult, TimingBreakdown, run_pipeline
from .routing import (
    PathEntry,
    RoutingTree,
    Segmentation,
    preprocess,
    segment_all,
    segment_edge,
)
from .scene import (
    build_scene,
    graph_from_scene,
    read_scene,
    scene_to_json,
    validate_scene,
    write_scene,
)
from .tree import (
    SpanningTree,
    build_bfs_tree,
    build_comb_tree,
    build_lst,
    build_spanning_tree,
)

__version__ = "0.1.0"

__all__ = [
    "BundleIndex",
    "BundleStats",
    "EdgeSpline",
    "EdgeListParseError",
    "EmptyGraphError",
    "ForceParams",
    "Graph",
    "LayoutResult",
    "LsqtError",
    "NotARemainderEdgeError",
    "NotATreeEdgeError",
    "NotConnectedError",
    "PathEntry",
    "PipelineResult",
    "RoutingTree",
    "SceneValidationError",
    "Segmentation",
    "SizeLimitError",
    "SpanningTree",
    "StretchReport",
    "TimingBreakdown",
    "average_stretch",
    "brute_force_best_tree",
    "build_bfs_tree",
    "build_bundles",
    "build_comb_tree",
    "build_lst",
    "build_scene",
    "build_spanning_tree",
    "bundle_stats",
    "bundles_of_edge",
    "connected_components",
    "edges_of_bundle",
    "graph_from_scene",
    "grid_graph",
    "layout_force",
    "layout_radial",
    "parse_edge_list",
    "parse_edge_list_file",
    "preprocess",
    "random_connected_graph",
    "read_scene",
    "run_pipeline",
    "scene_to_json",
    "segment_all",
    "segment_edge",
    "splines",
    "stretch_report",
    "to_edge_list_text",
    "validate_scene",
    "write_scene",
]
