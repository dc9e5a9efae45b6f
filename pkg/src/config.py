"""
Configuration for the word reconstruction engine.

Module-level constants are the defaults for every stage. A run config file
(TOML key-value tables) can override them per experiment; see load_run_config().
"""

import tomllib
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any

from errors import ConfigError

# Sequence format
# Frame CSV header, exactly as recorded by the stylus firmware
FRAME_HEADER = ("td", "yaw", "pitch", "roll", "ax", "ay", "az")

# Still-hold calibration recordings should last at least this long (milliseconds)
CALIBRATION_MIN_DURATION_MS = 10_000

# Resampling
# Every classifier input is interpolated to this many points per channel
RESAMPLE_POINTS = 100

# Rotation channels only; set to 6 to include acceleration
INPUT_CHANNELS = 3

# Segmentation
# Average number of frames needed to write one letter
FRAMES_PER_LETTER = 75

# Granularity G: number of equal splits per expected letter
DEFAULT_GRANULARITY = 4
GRID_GRANULARITIES = tuple(range(3, 10))  # G in [3, 9]

# Trajectory search
# Beam width K: trajectories kept per split point
DEFAULT_BEAM_WIDTH = 20
GRID_BEAM_WIDTHS = (5, 10, 15, 20)

# "exact" keeps the top K per split point and per candidate count,
# "beam" keeps only the top K per split point
DEFAULT_SEARCH_MODE = "exact"

# Auto-correction
MAX_EDIT_DISTANCE = 2
DEFAULT_KERNEL = "division"
DIVISION_BETA = 100.0  # weight of edit distance against log-frequency
POWER_BETA = 0.75  # exponent applied to log-frequency
DICTIONARY_PATH = Path(__file__).parent / "autocorrect" / "data" / "frequency_dictionary_en.txt"

# Classifier
NUM_CLASSES = 27  # A-Z plus the non-class
LSTM_LAYERS = 1
LSTM_HIDDEN = 64
FF_HIDDEN = 64

# Hyperparameter search ranges (inclusive integer ranges)
SEARCH_LSTM_LAYERS = (1, 8)
SEARCH_LSTM_HIDDEN = (50, 300)
SEARCH_FF_HIDDEN = (50, 400)

# Training
LEARNING_RATE = 1e-3
CLASSIFIER_WEIGHT_DECAY = 0.005
MAX_EPOCHS = 200
BATCH_SIZE = 64
PATIENCE = 20  # epochs without dev improvement before stopping
SEED = 0

# Augmentation
NOISE_SIGMA_DEG = 1.0
MAX_ROTATION_DEG = 5.0
STRETCH_RANGE = (1.0, 1.3)
SPLICE_FRACTION = 0.15
BRIDGE_FRAMES = 5
TRIM_MAX_FRACTION = 0.10
NONCLASS_MAX_SUBSEQ_FRACTION = 1 / 3
NONCLASS_PROPORTION = 1 / 27

# Domain adaptation
ADAPT_WEIGHT_DECAY = 0.05
ADAPT_MAX_EPOCHS = 500
ADAPT_ID_RATIO = 1.09  # ID items sampled per OOD item (441 / 405)
SPLIT_RATIO = (9, 1, 1)
DEFAULT_SCHEDULE = "progress"

# Synthetic corpus
SYNTH_FRAME_MS = 10
SYNTH_LETTER_FRAMES = (50, 110)  # clip range for one rendered letter
SYNTH_TRANSITION_FRAMES = (5, 15)  # pen travel between letters of a word
SYNTH_STILL_FRAMES = 1000  # 10 s still-hold
SYNTH_WORD_REPS = (3, 4)
SYNTH_LETTERS_PER_CLASS = 80
SYNTH_SUBJECTS = 3
SYNTH_NOISE_DEG = 0.4
SYNTH_OOD_TILT_DEG = 18.0
SYNTH_OOD_NOISE_FACTOR = 2.0
SYNTH_HOLD_POSE = (90.0, -10.0, -20.0)  # yaw, pitch, roll of a resting grip


@dataclass(frozen=True)
class DataSection:
    """Input locations."""

    manifest: str | None = None
    dev_manifest: str | None = None
    split_ratio: tuple[int, int, int] = SPLIT_RATIO
    seed: int = SEED


@dataclass(frozen=True)
class ClassifierSection:
    """Model shape."""

    lstm_layers: int = LSTM_LAYERS
    lstm_hidden: int = LSTM_HIDDEN
    ff_hidden: int = FF_HIDDEN
    input_channels: int = INPUT_CHANNELS
    resample_points: int = RESAMPLE_POINTS


@dataclass(frozen=True)
class TrainSection:
    """Optimizer and loop settings."""

    learning_rate: float = LEARNING_RATE
    weight_decay: float = CLASSIFIER_WEIGHT_DECAY
    max_epochs: int = MAX_EPOCHS
    batch_size: int = BATCH_SIZE
    patience: int = PATIENCE
    seed: int = SEED
    augment: bool = True


@dataclass(frozen=True)
class AugmentSection:
    """Per-epoch augmentation settings."""

    noise_sigma: float = NOISE_SIGMA_DEG
    max_rotation_deg: float = MAX_ROTATION_DEG
    stretch_lo: float = STRETCH_RANGE[0]
    stretch_hi: float = STRETCH_RANGE[1]
    splice_fraction: float = SPLICE_FRACTION
    bridge_frames: int = BRIDGE_FRAMES
    trim_max_fraction: float = TRIM_MAX_FRACTION
    nonclass_max_subseq_fraction: float = NONCLASS_MAX_SUBSEQ_FRACTION
    nonclass_proportion: float = NONCLASS_PROPORTION


@dataclass(frozen=True)
class PipelineSection:
    """Word reconstruction settings."""

    granularity: int = DEFAULT_GRANULARITY
    beam_width: int = DEFAULT_BEAM_WIDTH
    kernel: str = DEFAULT_KERNEL
    division_beta: float = DIVISION_BETA
    power_beta: float = POWER_BETA
    max_edit_distance: int = MAX_EDIT_DISTANCE
    search_mode: str = DEFAULT_SEARCH_MODE
    raw_logits: bool = False
    dictionary: str = str(DICTIONARY_PATH)


@dataclass(frozen=True)
class AdaptSection:
    """Adversarial domain adaptation settings."""

    max_epochs: int = ADAPT_MAX_EPOCHS
    learning_rate: float = LEARNING_RATE
    weight_decay: float = ADAPT_WEIGHT_DECAY
    batch_size: int = 32
    schedule: str = DEFAULT_SCHEDULE
    id_ratio: float = ADAPT_ID_RATIO
    seed: int = SEED


@dataclass(frozen=True)
class RunConfig:
    """One experiment's full configuration."""

    data: DataSection = field(default_factory=DataSection)
    classifier: ClassifierSection = field(default_factory=ClassifierSection)
    train: TrainSection = field(default_factory=TrainSection)
    augment: AugmentSection = field(default_factory=AugmentSection)
    pipeline: PipelineSection = field(default_factory=PipelineSection)
    adapt: AdaptSection = field(default_factory=AdaptSection)


# Presets for the search and adaptation experiments plus a desk-scale synthetic run
PRESETS: dict[str, RunConfig] = {
    "hparam-search": RunConfig(
        train=TrainSection(weight_decay=CLASSIFIER_WEIGHT_DECAY),
    ),
    "domain-adaptation": RunConfig(
        classifier=ClassifierSection(lstm_layers=3, lstm_hidden=200, ff_hidden=200),
        train=TrainSection(weight_decay=ADAPT_WEIGHT_DECAY, max_epochs=ADAPT_MAX_EPOCHS),
        adapt=AdaptSection(weight_decay=ADAPT_WEIGHT_DECAY, max_epochs=ADAPT_MAX_EPOCHS),
    ),
    "synthetic": RunConfig(
        classifier=ClassifierSection(lstm_layers=1, lstm_hidden=64, ff_hidden=64),
        train=TrainSection(max_epochs=200, batch_size=64, patience=20),
        adapt=AdaptSection(max_epochs=60, batch_size=32),
    ),
}


def _build_section(cls: type[Any], table: dict[str, Any], name: str, base: Any) -> Any:
    """Overlay a TOML table onto a section dataclass, rejecting unknown keys."""
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(table) - known)
    if unknown:
        raise ConfigError(f"Unknown key(s) in [{name}]: {', '.join(unknown)}")
    values = dict(table)
    if "split_ratio" in values:
        values["split_ratio"] = tuple(values["split_ratio"])
    return replace(base, **values)


def load_run_config(path: str | Path, preset: str | None = None) -> RunConfig:
    """
    Load a run config file.

    Args:
        path: TOML file with optional [data], [classifier], [train], [augment],
            [pipeline] and [adapt] tables
        preset: Name in PRESETS to start from instead of the plain defaults.
            A top-level ``preset = "..."`` key in the file has the same effect.

    Returns:
        RunConfig with file values overlaid on the defaults
    """
    try:
        with Path(path).open("rb") as fh:
            raw = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as e:
        raise ConfigError(f"Cannot read run config {path}: {e}") from e

    preset = raw.pop("preset", preset)
    if preset is not None and preset not in PRESETS:
        raise ConfigError(f"Unknown preset '{preset}'. Available: {sorted(PRESETS)}")
    base = PRESETS[preset] if preset is not None else RunConfig()

    sections: dict[str, Any] = {}
    for f in fields(RunConfig):
        table = raw.pop(f.name, {})
        if not isinstance(table, dict):
            raise ConfigError(f"[{f.name}] must be a table")
        sections[f.name] = _build_section(type(getattr(base, f.name)), table, f.name, getattr(base, f.name))
    if raw:
        raise ConfigError(f"Unknown top-level key(s): {', '.join(sorted(raw))}")
    return RunConfig(**sections)
