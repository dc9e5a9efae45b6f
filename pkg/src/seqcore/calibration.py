"""Still-hold calibration and per-sequence normalization."""

import logging
from collections.abc import Mapping

import numpy as np

import config
from errors import EmptyInputError

from .sequence import CalibrationProfile, Dataset, Sequence, zero_profile

logger = logging.getLogger(__name__)


def calibration_mean(cali: Sequence) -> CalibrationProfile:
    """
    Average every non-td channel of a still-hold recording.

    The recording is kept on the profile so non-class samples can be cut from it.
    """
    if len(cali) == 0:
        raise EmptyInputError("Calibration sequence is empty")
    if cali.duration_ms() < config.CALIBRATION_MIN_DURATION_MS:
        logger.warning(
            "Calibration recording for subject %r lasts %.0f ms (expected >= %d ms)",
            cali.subject,
            cali.duration_ms(),
            config.CALIBRATION_MIN_DURATION_MS,
        )
    mean = cali.data[:, 1:].sum(axis=0) / len(cali)
    return CalibrationProfile(mean=mean, source_frames=cali)


def calibrate(seq: Sequence, profile: CalibrationProfile) -> Sequence:
    """
    Apply x_i - mean - x_0 to every non-td channel.

    x_0 is the raw first frame of seq. td is left untouched.
    """
    data = np.array(seq.data, copy=True)
    data[:, 1:] = seq.data[:, 1:] - profile.mean - seq.data[0, 1:]
    return seq.with_data(data)


def delta_normalize(seq: Sequence) -> Sequence:
    """Subtract frame 0 from every frame (calibration with a zero profile)."""
    return calibrate(seq, zero_profile())


def calibrate_dataset(ds: Dataset, profiles: Mapping[str, CalibrationProfile]) -> Dataset:
    """Calibrate each item with its subject's profile, delta-normalizing the rest."""
    missing = sorted({s.subject for s in ds if s.subject not in profiles})
    for subject in missing:
        logger.warning("No calibration profile for subject %r; using delta normalization", subject)
    return ds.map(lambda s: calibrate(s, profiles.get(s.subject) or zero_profile()))
