"""fgx: similarity-driven 3D graph layout with brushable label-axes."""

from .axes import (
    FilterRange,
    LabelAxis,
    axis_parameter,
    axis_point,
    axis_to_dict,
    build_axis,
    compute_histogram,
    move_axis,
    set_filter,
    standoff_base,
)
from .brush import (
    BrushResult,
    CorrelationReport,
    LabelEdge,
    brush_result_to_dict,
    build_brush_result,
    combine_brushes,
    compute_brush,
    correlation_report,
    is_brush_active,
)
from .graph import (
    FeatureGraph,
    GraphError,
    GraphWarning,
    Node,
    generate_clustered,
    graph_to_dict,
    parse_graph,
    serialize_graph,
)
from .layout import (
    DistanceMatrix,
    LayoutScene,
    build_distance_matrix,
    build_scene,
    cosine_distance,
    dominant_dimension,
    mds_layout,
    scene_to_dict,
)
from .session import (
    MoveAxis,
    Session,
    SessionConfig,
    SetBins,
    SetFilter,
    SetThreshold,
    apply_delta,
    canonical_json,
    mutation_from_dict,
    mutation_to_dict,
)

__version__ = "0.1.0"

__all__ = [
    "BrushResult",
    "CorrelationReport",
    "DistanceMatrix",
    "FeatureGraph",
    "FilterRange",
    "GraphError",
    "GraphWarning",
    "LabelAxis",
    "LabelEdge",
    "LayoutScene",
    "MoveAxis",
    "Node",
    "Session",
    "SessionConfig",
    "SetBins",
    "SetFilter",
    "SetThreshold",
    "apply_delta",
    "axis_parameter",
    "axis_point",
    "axis_to_dict",
    "brush_result_to_dict",
    "build_axis",
    "build_brush_result",
    "build_distance_matrix",
    "build_scene",
    "canonical_json",
    "combine_brushes",
    "compute_brush",
    "compute_histogram",
    "correlation_report",
    "cosine_distance",
    "dominant_dimension",
    "generate_clustered",
    "graph_to_dict",
    "is_brush_active",
    "mds_layout",
    "move_axis",
    "mutation_from_dict",
    "mutation_to_dict",
    "parse_graph",
    "scene_to_dict",
    "serialize_graph",
    "set_filter",
    "standoff_base",
]
