"""Sequence data model, calibration, resampling and dataset formats.

A writing event is recorded as a Sequence of orientation and acceleration
frames. This package turns recordings into classifier inputs and reads and
writes the on-disk dataset layout.
"""

from .calibration import calibrate, calibrate_dataset, calibration_mean, delta_normalize
from .frames_io import parse_frames, read_frames_file, serialize_frames, write_frames_file
from .manifest import Corpus, ManifestEntry, load_corpus, load_dataset, load_manifest, save_dataset
from .resampling import cumulative_time, featurize, resample
from .sequence import (
    ALL_CHANNELS,
    CHANNELS,
    CLASSES,
    LETTERS,
    NONCLASS,
    ROTATION_CHANNELS,
    CalibrationProfile,
    Dataset,
    FixedSequence,
    FloatArray,
    Frame,
    Sequence,
    channels_for,
    class_index,
    zero_profile,
)
from .splitting import split_dataset

__all__ = [
    "ALL_CHANNELS",
    "CHANNELS",
    "CLASSES",
    "LETTERS",
    "NONCLASS",
    "ROTATION_CHANNELS",
    "CalibrationProfile",
    "Corpus",
    "Dataset",
    "FixedSequence",
    "FloatArray",
    "Frame",
    "ManifestEntry",
    "Sequence",
    "calibrate",
    "calibrate_dataset",
    "calibration_mean",
    "channels_for",
    "class_index",
    "cumulative_time",
    "delta_normalize",
    "featurize",
    "load_corpus",
    "load_dataset",
    "load_manifest",
    "parse_frames",
    "read_frames_file",
    "resample",
    "save_dataset",
    "serialize_frames",
    "split_dataset",
    "write_frames_file",
    "zero_profile",
]
