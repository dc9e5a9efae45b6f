"""Classifier shape and search ranges."""

from dataclasses import asdict, dataclass
from typing import Any

import config


@dataclass(frozen=True)
class Hparams:
    """Network shape. Every size is a positive integer; there are always 27 classes."""

    lstm_layers: int = config.LSTM_LAYERS
    lstm_hidden: int = config.LSTM_HIDDEN
    ff_hidden: int = config.FF_HIDDEN
    input_channels: int = config.INPUT_CHANNELS
    resample_points: int = config.RESAMPLE_POINTS
    num_classes: int = config.NUM_CLASSES

    def __post_init__(self) -> None:
        """Validate sizes."""
        for name in ("lstm_layers", "lstm_hidden", "ff_hidden", "input_channels"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if self.input_channels not in (3, 6):
            raise ValueError(f"input_channels must be 3 or 6, got {self.input_channels}")
        if self.resample_points < 2:
            raise ValueError(f"resample_points must be at least 2, got {self.resample_points}")
        if self.num_classes != config.NUM_CLASSES:
            raise ValueError(f"num_classes must be {config.NUM_CLASSES}, got {self.num_classes}")

    @property
    def decoder_input(self) -> int:
        """Width of the concatenated final hidden states."""
        return self.lstm_layers * self.lstm_hidden

    def to_dict(self) -> dict[str, int]:
        return asdict(self)

    @classmethod
    def from_dict(cls, values: dict[str, Any]) -> "Hparams":
        return cls(**{k: int(v) for k, v in values.items()})

    @classmethod
    def from_section(cls, section: config.ClassifierSection) -> "Hparams":
        return cls(
            lstm_layers=section.lstm_layers,
            lstm_hidden=section.lstm_hidden,
            ff_hidden=section.ff_hidden,
            input_channels=section.input_channels,
            resample_points=section.resample_points,
        )


@dataclass(frozen=True)
class HparamRanges:
    """Inclusive integer ranges sampled by the random search."""

    lstm_layers: tuple[int, int] = config.SEARCH_LSTM_LAYERS
    lstm_hidden: tuple[int, int] = config.SEARCH_LSTM_HIDDEN
    ff_hidden: tuple[int, int] = config.SEARCH_FF_HIDDEN

    def __post_init__(self) -> None:
        """Validate bounds."""
        for name in ("lstm_layers", "lstm_hidden", "ff_hidden"):
            lo, hi = getattr(self, name)
            if not 1 <= lo <= hi:
                raise ValueError(f"{name} range must satisfy 1 <= lo <= hi, got ({lo}, {hi})")

    def contains(self, h: Hparams) -> bool:
        """True when h lies inside every range."""
        return (
            self.lstm_layers[0] <= h.lstm_layers <= self.lstm_layers[1]
            and self.lstm_hidden[0] <= h.lstm_hidden <= self.lstm_hidden[1]
            and self.ff_hidden[0] <= h.ff_hidden <= self.ff_hidden[1]
        )
