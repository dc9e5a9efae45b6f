"""
Synthetic letter, word and still-hold recordings.

The pen model is deliberately simple: the stylus orientation follows the pen
position on the page, so yaw tracks horizontal travel and pitch tracks
vertical travel, while roll drifts slowly. Acceleration is gravity seen from
that orientation plus sensor noise.
"""

import logging
from collections.abc import Iterable
from pathlib import Path

import numpy as np
from scipy.spatial.transform import Rotation

import config
from augment import RandomSource
from augment.transforms import EULER_ORDER
from seqcore import LETTERS, CalibrationProfile, Corpus, Dataset, FloatArray, Sequence, calibration_mean, save_dataset

from .glyphs import template
from .profiles import SubjectProfile, letter_frames

logger = logging.getLogger(__name__)

# Horizontal pen advance from one letter to the next (unit boxes)
LETTER_ADVANCE = 1.3
GRAVITY_MG = 1000.0
ACCEL_NOISE_MG = 5.0

# 20 words from pangrams, 10 everyday words
DEFAULT_WORDS = (
    "the", "quick", "brown", "fox", "jumps", "over", "lazy", "dog",
    "pack", "my", "box", "with", "five", "dozen", "liquor", "jugs",
    "sphinx", "black", "quartz", "judge",
    "hello", "good", "time", "people", "water", "thank", "happy", "name", "home", "work",
)  # fmt: skip


def _gravity(angles: FloatArray) -> FloatArray:
    """Gravity vector in the sensor frame for each (yaw, pitch, roll) row."""
    rot = Rotation.from_euler(EULER_ORDER, angles, degrees=True)
    return np.asarray(rot.apply([0.0, 0.0, GRAVITY_MG], inverse=True), dtype=np.float64)


def _frames(angles: FloatArray, profile: SubjectProfile, rng: RandomSource) -> FloatArray:
    n = angles.shape[0]
    noise_scale = profile.noise_sigma / config.SYNTH_NOISE_DEG
    accel = _gravity(angles) + rng.normal(0.0, ACCEL_NOISE_MG * noise_scale, size=(n, 3))
    td = np.full((n, 1), float(config.SYNTH_FRAME_MS))
    return np.hstack([td, angles, accel])


def render_path(points: FloatArray, profile: SubjectProfile, rng: RandomSource) -> FloatArray:
    """
    Turn (n, 2) pen positions into (n, 7) frame rows.

    Args:
        points: Pen positions in unit-box coordinates
        profile: Writer whose gain, tilt, pose and noise to apply
        rng: Random stream for drift and noise

    Returns:
        Frame rows in frame-CSV column order
    """
    n = points.shape[0]
    theta = np.deg2rad(profile.tilt)
    plane = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    p = points @ plane.T

    drift = np.cumsum(rng.normal(0.0, 0.1 * profile.noise_sigma, size=n))
    yaw = profile.pose[0] + profile.scale[0] * p[:, 0]
    pitch = profile.pose[1] + profile.scale[1] * p[:, 1]
    roll = profile.pose[2] + 0.1 * profile.scale[1] * p[:, 1] + drift
    angles = np.column_stack([yaw, pitch, roll]) + rng.normal(0.0, profile.noise_sigma, size=(n, 3))
    return _frames(angles, profile, rng)


def _letter_rows(
    letter: str, profile: SubjectProfile, rng: RandomSource, origin: tuple[float, float]
) -> FloatArray:
    tpl = template(letter)
    jitter = profile.speed_jitter
    speed = profile.speed * (1.0 + rng.uniform(-jitter, jitter))
    points = tpl.sample(letter_frames(tpl.arc_length, speed)) + np.asarray(origin)
    return render_path(points, profile, rng)


def gen_letter(
    letter: str, profile: SubjectProfile, rng: RandomSource, origin: tuple[float, float] = (0.0, 0.0)
) -> Sequence:
    """One labelled letter recording."""
    rows = _letter_rows(letter, profile, rng, origin)
    return Sequence(rows, label=letter.upper(), subject=profile.name, session=f"{profile.name}-1")


def gen_word(word: str, profile: SubjectProfile, rng: RandomSource) -> Sequence:
    """
    A continuous word: letters written left to right, joined by pen travel.

    Consecutive letters are bridged by 5-15 interpolated frames.
    """
    if not word:
        raise ValueError("Cannot generate an empty word")
    lo, hi = config.SYNTH_TRANSITION_FRAMES
    parts: list[FloatArray] = []
    for k, ch in enumerate(word):
        rows = _letter_rows(ch, profile, rng, (k * LETTER_ADVANCE, 0.0))
        if parts:
            n_bridge = int(rng.integers(lo, hi + 1))
            steps = np.arange(1, n_bridge + 1, dtype=np.float64)[:, None] / (n_bridge + 1)
            a, b = parts[-1][-1], rows[0]
            bridge = a + (b - a) * steps
            bridge[:, 0] = float(config.SYNTH_FRAME_MS)
            parts.append(bridge)
        parts.append(rows)
    return Sequence(np.vstack(parts), word=word.lower(), subject=profile.name, session=f"{profile.name}-1")


def gen_still(
    profile: SubjectProfile, n_frames: int = config.SYNTH_STILL_FRAMES, rng: RandomSource | None = None
) -> Sequence:
    """Still-hold calibration recording at the writer's resting pose."""
    if n_frames < 2:
        raise ValueError(f"Still recording needs at least 2 frames, got {n_frames}")
    rng = rng if rng is not None else np.random.default_rng(profile.seed)
    drift = np.cumsum(rng.normal(0.0, 0.02, size=(n_frames, 3)), axis=0)
    angles = np.asarray(profile.pose) + drift + rng.normal(0.0, 0.5 * profile.noise_sigma, size=(n_frames, 3))
    return Sequence(_frames(angles, profile, rng), subject=profile.name, session=f"{profile.name}-1")


def gen_corpus(
    letters_per_class: int = config.SYNTH_LETTERS_PER_CLASS,
    word_list: Iterable[str] = DEFAULT_WORDS,
    profiles: Iterable[SubjectProfile] = (),
    seed: int = config.SEED,
    reps: tuple[int, int] = config.SYNTH_WORD_REPS,
) -> Corpus:
    """
    Balanced letters, repeated words and a calibration profile for every writer.

    Every recording draws from its own stream derived from (seed, writer seed,
    kind, index), so output does not depend on generation order.
    """
    if letters_per_class < 0:
        raise ValueError(f"letters_per_class must be non-negative, got {letters_per_class}")
    words = [w.strip().lower() for w in word_list]
    letters: list[Sequence] = []
    word_seqs: list[Sequence] = []
    calibration: dict[str, CalibrationProfile] = {}
    writers = list(profiles)
    for profile in writers:
        for li, letter in enumerate(LETTERS):
            for r in range(letters_per_class):
                letters.append(gen_letter(letter, profile, np.random.default_rng([seed, profile.seed, 0, li, r])))
        for wi, word in enumerate(words):
            n_reps = int(np.random.default_rng([seed, profile.seed, 1, wi, 0]).integers(reps[0], reps[1] + 1))
            for r in range(n_reps):
                word_seqs.append(gen_word(word, profile, np.random.default_rng([seed, profile.seed, 1, wi, r + 1])))
        still = gen_still(profile, rng=np.random.default_rng([seed, profile.seed, 2, 0, 0]))
        calibration[profile.name] = calibration_mean(still)
    logger.info(
        "Generated %d letter and %d word recordings for %d writers", len(letters), len(word_seqs), len(writers)
    )
    return Corpus(Dataset(tuple(letters)), Dataset(tuple(word_seqs)), calibration)


def read_word_list(path: str | Path) -> list[str]:
    """One word per line; blank lines and '#' comments are skipped."""
    words = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip().lower()
        if not line or line.startswith("#"):
            continue
        if not line.isascii() or not line.isalpha():
            raise ValueError(f"Word list entries must be ASCII letters, got {line!r}")
        words.append(line)
    return words


def write_corpus(out_dir: str | Path, corpus: Corpus) -> Path:
    """Write a corpus in the manifest layout; returns the manifest path."""
    return save_dataset(out_dir, corpus.letters, corpus.words, corpus.profiles)
