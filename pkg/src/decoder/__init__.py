"""Word segmentation and trajectory search over per-segment predictions."""

from .lattice_io import lattice_to_json, trajectory_to_json
from .prediction import PredictionTable, predict_segments
from .segmentation import MIN_SEGMENT_FRAMES, SegmentMap, segment, split_counts
from .trajectory import (
    SEARCH_MODES,
    Candidate,
    Trajectory,
    mean_of,
    suffix_tables,
    trajectory_search,
)

__all__ = [
    "MIN_SEGMENT_FRAMES",
    "SEARCH_MODES",
    "Candidate",
    "PredictionTable",
    "SegmentMap",
    "Trajectory",
    "lattice_to_json",
    "mean_of",
    "predict_segments",
    "segment",
    "split_counts",
    "suffix_tables",
    "trajectory_search",
    "trajectory_to_json",
]
