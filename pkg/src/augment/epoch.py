"""Per-epoch augmentation of a labeled letter dataset."""

import logging
from collections.abc import Mapping

from seqcore import NONCLASS, CalibrationProfile, Dataset, Sequence

from .nonclass import make_nonclass
from .options import AugmentConfig, RandomSource, make_rng
from .transforms import jitter_shape, splice_neighbors, trim

logger = logging.getLogger(__name__)

Profiles = CalibrationProfile | Mapping[str, CalibrationProfile] | None


def _profile_for(profiles: Profiles, subject: str) -> CalibrationProfile | None:
    if profiles is None or isinstance(profiles, CalibrationProfile):
        return profiles
    return profiles.get(subject)


def nonclass_count(n_letters: int, proportion: float) -> int:
    """Non-class samples needed so they make up `proportion` of the epoch."""
    if proportion <= 0:
        return 0
    return round(proportion / (1.0 - proportion) * n_letters)


def _maybe_trim(seq: Sequence, cfg: AugmentConfig, rng: RandomSource) -> Sequence:
    return trim(seq, cfg, rng) if len(seq) >= 4 else seq


def augment_epoch(ds: Dataset, profiles: Profiles, cfg: AugmentConfig, rng: RandomSource) -> Dataset:
    """
    Build one epoch's training set.

    Every letter goes through jitter_shape, splice_neighbors (donors drawn
    uniformly from ds) and trim. NONCLASS items already in ds are dropped and
    fresh ones are generated to make up cfg.nonclass_proportion of the output;
    they are appended after the letters.

    Args:
        ds: Labeled letter sequences
        profiles: One calibration profile, or profiles keyed by subject
        cfg: Augmentation settings
        rng: Epoch generator; advanced by the call

    Returns:
        Dataset of len(letters) + nonclass_count(...) sequences
    """
    ds.require_labeled()
    letters = ds.filter(lambda s: s.label != NONCLASS)
    n = len(letters)
    if n == 0:
        raise ValueError("augment_epoch needs at least one letter sequence")

    donors = [(int(rng.integers(n)), int(rng.integers(n))) for _ in range(n)]
    n_nc = nonclass_count(n, cfg.nonclass_proportion)
    streams = rng.spawn(n + n_nc)

    out: list[Sequence] = []
    for i, seq in enumerate(letters):
        r = streams[i]
        pre, post = donors[i]
        x = jitter_shape(seq, cfg, r)
        x = splice_neighbors(x, letters[pre], letters[post], cfg, r)
        out.append(_maybe_trim(x, cfg, r))

    for j in range(n_nc):
        r = streams[n + j]
        subject = letters[int(r.integers(n))].subject
        x = make_nonclass(_profile_for(profiles, subject), letters.by_subject(subject), cfg, r)
        x = jitter_shape(x, cfg, r)
        out.append(_maybe_trim(x, cfg, r))

    logger.debug("Augmented %d letters and generated %d non-class samples", n, n_nc)
    return Dataset(tuple(out), ds.split)


def preview(ds: Dataset, profiles: Profiles, cfg: AugmentConfig, k: int, seed: int) -> list[Sequence]:
    """The first k samples of one augmented epoch, for inspection."""
    return list(augment_epoch(ds, profiles, cfg, make_rng(seed)))[:k]
