"""Square-range closest-pair and minimum-weight queries built on staircase subdivisions."""
from .closest_pair import build_rcp, compute_yao_weights, partition_square, rcp_query
from .cones import (
    build_anchored_square_index,
    build_sparse_report_index,
    smallest_anchored_square,
    sparse_range_report,
)
from .geometry import (
    NO_PAIR,
    ClosestPairAnswer,
    Orientation,
    Point,
    Square,
    SquareWithPoints,
    WeightedPoint,
    validate_general_position,
)
from .min_weight import build_rmw_from_cp, rmw_from_cp_query
from .rmw import build_rmw_baseline, rmw_query
from .staircase import build_staircase_index, closest_c_query, locate_nec

__all__ = [
    "NO_PAIR", "ClosestPairAnswer", "Orientation", "Point", "Square", "SquareWithPoints",
    "WeightedPoint", "build_anchored_square_index", "build_rcp", "build_rmw_baseline",
    "build_rmw_from_cp", "build_sparse_report_index", "build_staircase_index", "closest_c_query",
    "compute_yao_weights", "locate_nec", "partition_square", "rcp_query", "rmw_from_cp_query",
    "rmw_query", "smallest_anchored_square", "sparse_range_report", "validate_general_position",
]
