"""JSON dump of a segment lattice and its best trajectories."""

from typing import Any

from .prediction import PredictionTable
from .segmentation import SegmentMap
from .trajectory import Trajectory


def trajectory_to_json(t: Trajectory) -> dict[str, Any]:
    return {
        "word": t.word,
        "mean_score": t.mean_score,
        "spans": [list(span) for span in t.spans],
        "scores": [c.score for c in t.candidates],
    }


def lattice_to_json(
    table: PredictionTable,
    trajectories: list[Trajectory],
    segment_map: SegmentMap | None = None,
) -> dict[str, Any]:
    """
    Lattice document: one entry per classified segment plus the ranked trajectories.

    Entries carry all 27 scores in class order (A-Z, NONCLASS).
    """
    doc: dict[str, Any] = {
        "n_splits": table.n_splits,
        "raw_logits": table.raw_logits,
        "entries": [
            {"begin": b, "end": e, "logprobs": [float(v) for v in table[(b, e)]]}
            for b, e in table
        ],
        "trajectories": [trajectory_to_json(t) for t in trajectories],
    }
    if segment_map is not None:
        doc["granularity"] = segment_map.granularity
        doc["part_len"] = segment_map.part_len
        doc["word_len"] = segment_map.word_len
    return doc
