"""Per-segment classifier predictions."""

from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field

import numpy as np

from classifier import Model, forward, log_softmax
from seqcore import CalibrationProfile, FloatArray, channels_for, featurize

from .segmentation import SegmentMap

Pair = tuple[int, int]


@dataclass(frozen=True, eq=False)
class PredictionTable:
    """
    27 scores per classifiable segment.

    Scores are log-probabilities unless the table was built from raw logits.
    """

    n_splits: int
    entries: Mapping[Pair, FloatArray] = field(default_factory=dict)
    raw_logits: bool = False

    def __post_init__(self) -> None:
        """Validate pairs and vectors."""
        frozen = {}
        for (b, e), vec in sorted(self.entries.items()):
            if not 0 <= b < e <= self.n_splits:
                raise ValueError(f"Invalid segment ({b}, {e}) for {self.n_splits} splits")
            arr = np.array(vec, dtype=np.float64, copy=True)
            if arr.shape != (27,) or not np.all(np.isfinite(arr)):
                raise ValueError(f"Segment ({b}, {e}) needs 27 finite scores")
            arr.flags.writeable = False
            frozen[(b, e)] = arr
        object.__setattr__(self, "entries", frozen)

    def __contains__(self, pair: object) -> bool:
        return pair in self.entries

    def __getitem__(self, pair: Pair) -> FloatArray:
        return self.entries[pair]

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def ends_from(self, begin: int) -> list[int]:
        """Segment ends available from a split point, ascending."""
        return sorted(e for b, e in self.entries if b == begin)


def predict_segments(
    m: Model,
    sm: SegmentMap,
    profile: CalibrationProfile | None = None,
    raw_logits: bool = False,
    batch_size: int = 256,
) -> PredictionTable:
    """
    Classify every classifiable segment of a word.

    Each slice goes through the same featurization as training letters
    (calibrated with the writer's profile, then resampled).
    """
    h = m.hparams
    channels = channels_for(h.input_channels)
    pairs = sm.pairs()
    if not pairs:
        return PredictionTable(sm.n_splits, {}, raw_logits)
    X = np.stack(
        [featurize(sm.slice(b, e), profile, h.resample_points, channels).channels.T for b, e in pairs]
    )
    logits = np.concatenate([forward(m, X[i : i + batch_size]) for i in range(0, len(X), batch_size)])
    scores = logits if raw_logits else log_softmax(logits)
    return PredictionTable(sm.n_splits, dict(zip(pairs, scores, strict=True)), raw_logits)
