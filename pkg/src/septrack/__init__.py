"""Track, queue, and 3D grid layouts of planar graphs via layered separators.

The pipeline: BFS-layer a triangulation of the input, decompose it by
balanced layered separators (fundamental cycles of the BFS tree), read a
track assignment off the separator tree, wrap layers mod 3 to a logarithmic
number of tracks, and derive a queue layout and a 3D grid drawing. Every
structural guarantee has an independent verifier in this package.
"""

from ._kernels import backend_name
from .drawing import GridDrawing3D, VolumeStats, draw, verify_drawing, volume_stats
from .embedding import (
    FaceSet,
    RotationSystem,
    Triangulation,
    biconnect,
    faces,
    is_biconnected,
    triangulate,
    validate_rotation,
)
from .errors import (
    CoverageError,
    DisconnectedGraphError,
    DrawingError,
    EmbeddingError,
    FormatError,
    GraphError,
    InvariantViolation,
    SeptrackError,
)
from .generators import FAMILY_ARITY, SEEDED_FAMILIES, GeneratorSpec, generate
from .graph import (
    Graph,
    Layering,
    Separation,
    bfs_layering,
    check_layered_separator,
    connected_components,
    normalize_edge,
    validate_layering,
    validate_separation,
)
from .pipeline import BoundReport, PipelineResult, run_pipeline
from .queues import (
    QueueLayout,
    exact_queue_number,
    min_queues_fixed_order,
    tracks_to_queues,
    validate_queue_layout,
)
from .separators import (
    BfsTree,
    CycleIndex,
    FundamentalCycle,
    SeparatorNode,
    SeparatorTree,
    bfs_tree,
    build_separator_tree,
    ceil_log_three_halves,
    cycle_sides,
    find_layered_separator,
    fundamental_cycle,
    nontree_edges,
    validate_separator_tree,
)
from .tracks import (
    TrackAssignment,
    TreeTrackLayout,
    assign_tracks,
    compose_final,
    extract_depth_layout,
    same_track_edges,
    span_stats,
    tree_track_layout,
    verify_no_xcrossing,
    wrap,
)

__version__ = "0.1.0"

__all__ = [
    "BfsTree",
    "BoundReport",
    "CoverageError",
    "CycleIndex",
    "DisconnectedGraphError",
    "DrawingError",
    "EmbeddingError",
    "FAMILY_ARITY",
    "FaceSet",
    "FormatError",
    "FundamentalCycle",
    "GeneratorSpec",
    "Graph",
    "GraphError",
    "GridDrawing3D",
    "InvariantViolation",
    "Layering",
    "PipelineResult",
    "QueueLayout",
    "RotationSystem",
    "SEEDED_FAMILIES",
    "Separation",
    "SeparatorNode",
    "SeparatorTree",
    "SeptrackError",
    "TrackAssignment",
    "TreeTrackLayout",
    "Triangulation",
    "VolumeStats",
    "assign_tracks",
    "backend_name",
    "bfs_layering",
    "bfs_tree",
    "biconnect",
    "build_separator_tree",
    "ceil_log_three_halves",
    "check_layered_separator",
    "compose_final",
    "connected_components",
    "cycle_sides",
    "draw",
    "exact_queue_number",
    "extract_depth_layout",
    "faces",
    "find_layered_separator",
    "fundamental_cycle",
    "generate",
    "is_biconnected",
    "min_queues_fixed_order",
    "nontree_edges",
    "normalize_edge",
    "run_pipeline",
    "same_track_edges",
    "span_stats",
    "tracks_to_queues",
    "tree_track_layout",
    "triangulate",
    "validate_layering",
    "validate_queue_layout",
    "validate_rotation",
    "validate_separation",
    "validate_separator_tree",
    "verify_drawing",
    "verify_no_xcrossing",
    "volume_stats",
    "wrap",
]
