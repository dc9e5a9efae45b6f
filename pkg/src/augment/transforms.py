"""Shape jitter, neighbor splicing and trimming of letter sequences."""

import numpy as np
from scipy.spatial.transform import Rotation

from errors import SequenceTooShortError
from seqcore import ROTATION_CHANNELS, FloatArray, Sequence
from seqcore.sequence import channel_columns

from .options import AugmentConfig, RandomSource, fraction_count

ROT_COLS = channel_columns(ROTATION_CHANNELS)
# yaw, pitch, roll as intrinsic Z-Y-X Euler angles
EULER_ORDER = "ZYX"


def random_rotation(max_deg: float, rng: RandomSource) -> Rotation | None:
    """Rotation about a uniform random axis with angle uniform in [0, max_deg]."""
    angle = rng.uniform(0.0, max_deg)
    axis = rng.normal(size=3)
    norm = np.linalg.norm(axis)
    if angle == 0.0 or norm == 0.0:
        return None
    return Rotation.from_rotvec(axis / norm * np.deg2rad(angle))


def rotate_orientations(angles: FloatArray, rot: Rotation) -> FloatArray:
    """
    Compose every (yaw, pitch, roll) row with one global rotation.

    Output angles are shifted by whole turns to stay next to the input angles.
    """
    orient = Rotation.from_euler(EULER_ORDER, angles, degrees=True)
    out = np.asarray((rot * orient).as_euler(EULER_ORDER, degrees=True), dtype=np.float64)
    return out + 360.0 * np.round((angles - out) / 360.0)


def jitter_shape(seq: Sequence, cfg: AugmentConfig, rng: RandomSource) -> Sequence:
    """
    Perturb the rotation channels: Gaussian noise, one global rotation, per-channel stretch.

    Acceleration channels and td are left untouched.
    """
    data = np.array(seq.data, copy=True)
    angles = data[:, ROT_COLS] + rng.normal(0.0, cfg.noise_sigma, size=(len(seq), len(ROT_COLS)))

    rot = random_rotation(cfg.max_rotation_deg, rng)
    if rot is not None:
        angles = rotate_orientations(angles, rot)

    stretch = rng.uniform(cfg.stretch_lo, cfg.stretch_hi, size=len(ROT_COLS))
    data[:, ROT_COLS] = angles * stretch
    return seq.with_data(data)


def _bridge(a: FloatArray, b: FloatArray, frames: int, td: float) -> FloatArray:
    """frames rows strictly between rows a and b, linearly interpolated."""
    steps = np.arange(1, frames + 1, dtype=np.float64)[:, None] / (frames + 1)
    rows = a + (b - a) * steps
    rows[:, 0] = td
    return rows


def splice_neighbors(
    seq: Sequence,
    donor_pre: Sequence,
    donor_post: Sequence,
    cfg: AugmentConfig,
    rng: RandomSource,
) -> Sequence:
    """
    Prepend the tail of donor_pre and append the head of donor_post.

    Each junction gets cfg.bridge_frames interpolated frames. The rng is accepted
    for a uniform transform signature; splicing itself draws nothing.
    """
    k_pre = min(len(donor_pre), max(cfg.min_splice_frames, fraction_count(cfg.splice_fraction, len(donor_pre), ceil=True)))
    k_post = min(len(donor_post), max(cfg.min_splice_frames, fraction_count(cfg.splice_fraction, len(donor_post), ceil=True)))
    head = donor_pre.data[len(donor_pre) - k_pre :]
    tail = donor_post.data[:k_post]
    body = seq.data
    td = float(np.round(np.median(body[:, 0])))

    left = head[-1] if k_pre else body[0]
    right = tail[0] if k_post else body[-1]
    parts = [
        head,
        _bridge(left, body[0], cfg.bridge_frames, td),
        body,
        _bridge(body[-1], right, cfg.bridge_frames, td),
        tail,
    ]
    return seq.with_data(np.concatenate(parts, axis=0))


def trim(seq: Sequence, cfg: AugmentConfig, rng: RandomSource) -> Sequence:
    """Drop up to trim_max_fraction of the frames from each end, keeping at least 2."""
    n = len(seq)
    if n < 4:
        raise SequenceTooShortError(f"Trimming needs at least 4 frames, got {n}")
    bound = fraction_count(cfg.trim_max_fraction, n, ceil=False)
    head = int(rng.integers(0, bound + 1))
    tail = int(rng.integers(0, bound + 1))
    excess = head + tail - (n - 2)
    if excess > 0:
        tail -= min(tail, excess)
        head -= max(0, head + tail - (n - 2))
    return seq.slice(head, n - tail)
