"""Augmentation settings and random streams."""

from dataclasses import dataclass

import numpy as np

import config


@dataclass(frozen=True)
class AugmentConfig:
    """Per-epoch augmentation settings (angles in degrees)."""

    noise_sigma: float = config.NOISE_SIGMA_DEG
    max_rotation_deg: float = config.MAX_ROTATION_DEG
    stretch_lo: float = config.STRETCH_RANGE[0]
    stretch_hi: float = config.STRETCH_RANGE[1]
    splice_fraction: float = config.SPLICE_FRACTION
    bridge_frames: int = config.BRIDGE_FRAMES
    trim_max_fraction: float = config.TRIM_MAX_FRACTION
    nonclass_max_subseq_fraction: float = config.NONCLASS_MAX_SUBSEQ_FRACTION
    nonclass_proportion: float = config.NONCLASS_PROPORTION
    min_splice_frames: int = 1

    def __post_init__(self) -> None:
        """Validate ranges."""
        if self.noise_sigma < 0:
            raise ValueError(f"noise_sigma must be non-negative, got {self.noise_sigma}")
        if not 0 <= self.max_rotation_deg <= 180:
            raise ValueError(f"max_rotation_deg must be in [0, 180], got {self.max_rotation_deg}")
        if not 0 < self.stretch_lo <= self.stretch_hi:
            raise ValueError(f"Stretch range must satisfy 0 < lo <= hi, got [{self.stretch_lo}, {self.stretch_hi}]")
        for name in ("splice_fraction", "trim_max_fraction", "nonclass_max_subseq_fraction"):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if not 0 <= self.nonclass_proportion < 1:
            raise ValueError(f"nonclass_proportion must be in [0, 1), got {self.nonclass_proportion}")
        if self.bridge_frames < 0 or self.min_splice_frames < 0:
            raise ValueError("bridge_frames and min_splice_frames must be non-negative")

    @classmethod
    def identity(cls) -> "AugmentConfig":
        """Settings under which every transform returns its input unchanged."""
        return cls(
            noise_sigma=0.0,
            max_rotation_deg=0.0,
            stretch_lo=1.0,
            stretch_hi=1.0,
            splice_fraction=0.0,
            bridge_frames=0,
            trim_max_fraction=0.0,
            nonclass_proportion=0.0,
            min_splice_frames=0,
        )

    @classmethod
    def from_section(cls, section: config.AugmentSection) -> "AugmentConfig":
        """Build from the [augment] table of a run config."""
        return cls(
            noise_sigma=section.noise_sigma,
            max_rotation_deg=section.max_rotation_deg,
            stretch_lo=section.stretch_lo,
            stretch_hi=section.stretch_hi,
            splice_fraction=section.splice_fraction,
            bridge_frames=section.bridge_frames,
            trim_max_fraction=section.trim_max_fraction,
            nonclass_max_subseq_fraction=section.nonclass_max_subseq_fraction,
            nonclass_proportion=section.nonclass_proportion,
        )


RandomSource = np.random.Generator


def make_rng(seed: int | np.random.SeedSequence | None) -> RandomSource:
    """Seeded generator; identical seeds give identical draws."""
    return np.random.default_rng(seed)


def fraction_count(fraction: float, n: int, *, ceil: bool) -> int:
    """fraction * n rounded up or down, tolerant of float noise (0.15 * 100 is 15)."""
    x = fraction * n
    return int(np.ceil(x - 1e-9)) if ceil else int(np.floor(x + 1e-9))
