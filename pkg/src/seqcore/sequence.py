"""Frame and sequence data model."""

import math
from collections import Counter
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field, replace

import numpy as np
import numpy.typing as npt

import config

FloatArray = npt.NDArray[np.float64]

FRAME_COLUMNS = config.FRAME_HEADER
CHANNELS = FRAME_COLUMNS[1:]  # every column except td
ROTATION_CHANNELS = ("yaw", "pitch", "roll")
ALL_CHANNELS = CHANNELS

LETTERS = tuple("ABCDEFGHIJKLMNOPQRSTUVWXYZ")
NONCLASS = "NONCLASS"
CLASSES = (*LETTERS, NONCLASS)  # index order of the 27 logits


def class_index(label: str) -> int:
    """Map a class label to its logit index."""
    try:
        return CLASSES.index(label)
    except ValueError:
        raise ValueError(f"Unknown class label: {label!r}") from None


def channel_columns(channels: Iterable[str]) -> list[int]:
    """Column indices (into a frame row) for the named channels."""
    cols = []
    for name in channels:
        if name not in CHANNELS:
            raise ValueError(f"Unknown channel: {name!r}")
        cols.append(FRAME_COLUMNS.index(name))
    return cols


def channels_for(input_channels: int) -> tuple[str, ...]:
    """Channel selector matching a classifier input width (3 or 6)."""
    if input_channels == 3:
        return ROTATION_CHANNELS
    if input_channels == 6:
        return ALL_CHANNELS
    raise ValueError(f"Unsupported input channel count: {input_channels}")


@dataclass(frozen=True)
class Frame:
    """One sensor sample."""

    td: int  # milliseconds since the previous frame
    yaw: float  # degrees
    pitch: float
    roll: float
    ax: float  # milli-g
    ay: float
    az: float

    def __post_init__(self) -> None:
        """Validate frame values."""
        if self.td < 0:
            raise ValueError(f"Frame td must be non-negative, got {self.td}")
        values = (self.yaw, self.pitch, self.roll, self.ax, self.ay, self.az)
        if not all(math.isfinite(v) for v in values):
            raise ValueError(f"Frame values must be finite: {values}")

    def as_row(self) -> tuple[float, ...]:
        """Values in frame-CSV column order."""
        return (float(self.td), self.yaw, self.pitch, self.roll, self.ax, self.ay, self.az)


@dataclass(frozen=True, eq=False)
class Sequence:
    """
    A recording of one writing event.

    Frames are stored as a read-only (n, 7) float64 array in frame-CSV column
    order. Letter recordings carry a class label; word recordings carry the
    written word instead.
    """

    data: FloatArray
    label: str | None = None
    subject: str = ""
    session: str = ""
    word: str | None = None

    def __post_init__(self) -> None:
        """Validate and freeze the frame array."""
        data = np.array(self.data, dtype=np.float64, copy=True)
        if data.ndim != 2 or data.shape[1] != len(FRAME_COLUMNS):
            raise ValueError(f"Sequence data must have shape (n, 7), got {data.shape}")
        if data.shape[0] == 0:
            raise ValueError("Sequence must contain at least one frame")
        if not np.all(np.isfinite(data)):
            raise ValueError("Sequence values must be finite")
        if np.any(data[:, 0] < 0):
            raise ValueError("Frame td must be non-negative")
        if self.label is not None and self.label not in CLASSES:
            raise ValueError(f"Unknown class label: {self.label!r}")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @classmethod
    def from_frames(cls, frames: Iterable[Frame], **meta: str | None) -> "Sequence":
        """Build a sequence from Frame objects."""
        rows = [f.as_row() for f in frames]
        if not rows:
            raise ValueError("Sequence must contain at least one frame")
        return cls(np.array(rows, dtype=np.float64), **meta)  # type: ignore[arg-type]

    def __len__(self) -> int:
        return int(self.data.shape[0])

    @property
    def frames(self) -> list[Frame]:
        """Frames as value objects."""
        return [
            Frame(int(r[0]), float(r[1]), float(r[2]), float(r[3]), float(r[4]), float(r[5]), float(r[6]))
            for r in self.data
        ]

    @property
    def td(self) -> FloatArray:
        return self.data[:, 0]

    def channels(self, names: Iterable[str] = ROTATION_CHANNELS) -> FloatArray:
        """(n, C) view of the named channels."""
        return self.data[:, channel_columns(names)]

    def duration_ms(self) -> float:
        """Sum of td over all frames."""
        return float(self.data[:, 0].sum())

    def with_data(self, data: FloatArray, **meta: str | None) -> "Sequence":
        """Copy with new frame data, keeping metadata unless overridden."""
        return replace(self, data=data, **meta)  # type: ignore[arg-type]

    def slice(self, start: int, stop: int) -> "Sequence":
        """Contiguous frame range [start, stop) with the same metadata."""
        return self.with_data(self.data[start:stop])

    def same_frames(self, other: "Sequence") -> bool:
        """True when both sequences hold identical frame values."""
        return self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data))


@dataclass(frozen=True, eq=False)
class CalibrationProfile:
    """Channel means of a still-hold recording."""

    mean: FloatArray  # yaw, pitch, roll, ax, ay, az
    source_frames: Sequence | None = None

    def __post_init__(self) -> None:
        """Validate the mean vector."""
        mean = np.array(self.mean, dtype=np.float64, copy=True)
        if mean.shape != (len(CHANNELS),):
            raise ValueError(f"Calibration mean must have 6 entries, got shape {mean.shape}")
        if not np.all(np.isfinite(mean)):
            raise ValueError("Calibration mean must be finite")
        mean.flags.writeable = False
        object.__setattr__(self, "mean", mean)

    @property
    def subject(self) -> str:
        return self.source_frames.subject if self.source_frames is not None else ""


def zero_profile() -> CalibrationProfile:
    """Profile with zero mean; calibrating with it only subtracts frame 0."""
    return CalibrationProfile(mean=np.zeros(len(CHANNELS)))


@dataclass(frozen=True, eq=False)
class FixedSequence:
    """Channel-major resampled sequence consumed by the classifier."""

    channels: FloatArray  # (C, N)
    label: str | None = None
    channel_names: tuple[str, ...] = ROTATION_CHANNELS

    def __post_init__(self) -> None:
        """Validate shape and values."""
        values = np.array(self.channels, dtype=np.float64, copy=True)
        if values.ndim != 2 or values.shape[0] != len(self.channel_names):
            raise ValueError(
                f"FixedSequence needs {len(self.channel_names)} rows, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("FixedSequence values must be finite")
        if self.label is not None and self.label not in CLASSES:
            raise ValueError(f"Unknown class label: {self.label!r}")
        values.flags.writeable = False
        object.__setattr__(self, "channels", values)

    @property
    def n_points(self) -> int:
        return int(self.channels.shape[1])

    def to_sequence(self, td: int = 10) -> Sequence:
        """Rebuild a Sequence with uniform timestamps (other channels zero)."""
        data = np.zeros((self.n_points, len(FRAME_COLUMNS)))
        data[:, 0] = td
        data[0, 0] = 0
        data[:, channel_columns(self.channel_names)] = self.channels.T
        return Sequence(data, label=self.label)


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of sequences, optionally tagged with its split."""

    items: tuple[Sequence, ...] = field(default_factory=tuple)
    split: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Sequence]:
        return iter(self.items)

    def __getitem__(self, index: int) -> Sequence:
        return self.items[index]

    def labels(self) -> list[str | None]:
        return [s.label for s in self.items]

    def label_counts(self) -> dict[str, int]:
        """Number of items per label (words counted under their text)."""
        counts = Counter(s.label or (f"word:{s.word}" if s.word else "unlabeled") for s in self.items)
        return dict(sorted(counts.items()))

    def subject_counts(self) -> dict[str, int]:
        return dict(sorted(Counter(s.subject for s in self.items).items()))

    def subjects(self) -> list[str]:
        return sorted({s.subject for s in self.items})

    def filter(self, predicate: Callable[[Sequence], bool]) -> "Dataset":
        return Dataset(tuple(s for s in self.items if predicate(s)), self.split)

    def by_subject(self, subject: str) -> "Dataset":
        return self.filter(lambda s: s.subject == subject)

    def map(self, fn: Callable[[Sequence], Sequence]) -> "Dataset":
        """Apply fn to every item, keeping order."""
        return Dataset(tuple(fn(s) for s in self.items), self.split)

    def with_split(self, split: str | None) -> "Dataset":
        return Dataset(self.items, split)

    def concat(self, other: "Dataset") -> "Dataset":
        return Dataset(self.items + other.items, self.split)

    def require_labeled(self) -> None:
        """Raise if any item lacks a label or subject."""
        for i, s in enumerate(self.items):
            if s.label is None:
                raise ValueError(f"Dataset item {i} has no label")
            if not s.subject:
                raise ValueError(f"Dataset item {i} has no subject")
