"""Fixed-length resampling of variable-length sequences."""

from collections.abc import Iterable

import numpy as np

import config
from errors import SequenceTooShortError

from .calibration import calibrate
from .sequence import (
    ROTATION_CHANNELS,
    CalibrationProfile,
    FixedSequence,
    FloatArray,
    Sequence,
    zero_profile,
)


def cumulative_time(td: FloatArray) -> FloatArray:
    """
    Prefix-sum of td with repeated timestamps pushed forward by 1 ms each.

    The first frame sits at t = 0 whatever its td says.
    """
    t = np.cumsum(td) - td[0]
    idx = np.arange(len(t), dtype=np.float64)
    # u_i = i + running max of (t_j - j) is the smallest strictly increasing
    # sequence with u_i >= t_i that steps by exactly 1 ms through ties
    return idx + np.maximum.accumulate(t - idx)


def resample(
    seq: Sequence,
    n_points: int = config.RESAMPLE_POINTS,
    channels: Iterable[str] = ROTATION_CHANNELS,
) -> FixedSequence:
    """
    Sample each selected channel at n_points uniform times.

    Channels are linearly interpolated over cumulative time from the first to the
    last timestamp inclusive, so both endpoints are kept exactly.
    """
    if n_points < 2:
        raise ValueError(f"n_points must be at least 2, got {n_points}")
    if len(seq) < 2:
        raise SequenceTooShortError(f"Resampling needs at least 2 frames, got {len(seq)}")

    names = tuple(channels)
    t = cumulative_time(seq.td)
    ts = np.linspace(t[0], t[-1], n_points)
    values = seq.channels(names)
    out = np.empty((len(names), n_points))
    for k in range(len(names)):
        out[k] = np.interp(ts, t, values[:, k])
        out[k, 0] = values[0, k]
        out[k, -1] = values[-1, k]
    return FixedSequence(channels=out, label=seq.label, channel_names=names)


def featurize(
    seq: Sequence,
    profile: CalibrationProfile | None = None,
    n_points: int = config.RESAMPLE_POINTS,
    channels: Iterable[str] = ROTATION_CHANNELS,
) -> FixedSequence:
    """Calibrate then resample; the one input path into the classifier."""
    return resample(calibrate(seq, profile or zero_profile()), n_points, channels)
