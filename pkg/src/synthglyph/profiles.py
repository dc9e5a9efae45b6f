"""Per-writer distortion profiles for the synthetic corpus."""

from dataclasses import dataclass, replace

import numpy as np

import config

from .glyphs import TEMPLATES


def letter_frames(arc_length: float, speed: float) -> int:
    """Frames needed to write a path of arc_length at speed, clipped to the letter range."""
    lo, hi = config.SYNTH_LETTER_FRAMES
    return int(np.clip(round(speed * arc_length), lo, hi))


def mean_letter_frames(speed: float) -> float:
    """Average rendered length over the 26 templates."""
    return float(np.mean([letter_frames(t.arc_length, speed) for t in TEMPLATES.values()]))


def calibrate_speed(target: float = config.FRAMES_PER_LETTER, iterations: int = 60) -> float:
    """Frames per unit arc length that make the average letter last about target frames."""
    lo, hi = 1.0, 200.0
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if mean_letter_frames(mid) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


DEFAULT_SPEED = calibrate_speed()


@dataclass(frozen=True)
class SubjectProfile:
    """How one simulated writer turns pen motion into orientation."""

    name: str
    scale: tuple[float, float] = (25.0, 20.0)  # degrees of yaw, pitch per unit of pen travel
    tilt: float = 0.0  # degrees the writing plane is rotated by
    noise_sigma: float = config.SYNTH_NOISE_DEG
    speed: float = DEFAULT_SPEED  # frames per unit arc length
    seed: int = 0
    pose: tuple[float, float, float] = config.SYNTH_HOLD_POSE
    speed_jitter: float = 0.08  # relative spread of one rendition's speed

    def __post_init__(self) -> None:
        """Validate profile parameters."""
        if not self.name:
            raise ValueError("Profile name must be non-empty")
        if self.speed <= 0:
            raise ValueError(f"Speed must be positive, got {self.speed}")
        if self.noise_sigma < 0:
            raise ValueError(f"Noise sigma must be non-negative, got {self.noise_sigma}")
        if not 0 <= self.speed_jitter < 1:
            raise ValueError(f"Speed jitter must be in [0, 1), got {self.speed_jitter}")

    def noiseless(self) -> "SubjectProfile":
        """Copy with noise and speed jitter switched off."""
        return replace(self, noise_sigma=0.0, speed_jitter=0.0)


def default_profiles(n: int = config.SYNTH_SUBJECTS, seed: int = config.SEED) -> list[SubjectProfile]:
    """n in-domain writers with small personal differences."""
    profiles = []
    for i in range(n):
        rng = np.random.default_rng([seed, i])
        gain = 1.0 + rng.uniform(-0.1, 0.1, size=2)
        offset = rng.normal(0.0, 2.0, size=3)
        profiles.append(
            SubjectProfile(
                name=f"s{i + 1:02d}",
                scale=(25.0 * float(gain[0]), 20.0 * float(gain[1])),
                tilt=float(rng.uniform(-4.0, 4.0)),
                speed=DEFAULT_SPEED * float(1.0 + rng.uniform(-0.05, 0.05)),
                seed=i,
                pose=(
                    config.SYNTH_HOLD_POSE[0] + float(offset[0]),
                    config.SYNTH_HOLD_POSE[1] + float(offset[1]),
                    config.SYNTH_HOLD_POSE[2] + float(offset[2]),
                ),
            )
        )
    return profiles


def ood_profile(name: str = "ood", seed: int = 100) -> SubjectProfile:
    """Held-out writer: rotated writing plane and doubled noise."""
    return SubjectProfile(
        name=name,
        tilt=config.SYNTH_OOD_TILT_DEG,
        noise_sigma=config.SYNTH_NOISE_DEG * config.SYNTH_OOD_NOISE_FACTOR,
        seed=seed,
        pose=(config.SYNTH_HOLD_POSE[0] + 6.0, config.SYNTH_HOLD_POSE[1] - 4.0, config.SYNTH_HOLD_POSE[2] + 5.0),
    )
