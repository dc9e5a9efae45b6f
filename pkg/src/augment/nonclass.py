"""Writing-like noise samples for the 27th class."""

from seqcore import NONCLASS, CalibrationProfile, Dataset, Sequence

from .options import AugmentConfig, RandomSource, fraction_count


def make_nonclass(
    profile: CalibrationProfile | None,
    letters: Dataset,
    cfg: AugmentConfig,
    rng: RandomSource,
) -> Sequence:
    """
    Cut a NONCLASS sample from calibration noise or from part of a letter.

    With probability 1/2 the sample is a contiguous slice of the profile's still-hold
    recording, as long as a randomly chosen letter. Otherwise it is a contiguous
    sub-sequence of a random letter covering at most nonclass_max_subseq_fraction
    of its frames. A profile without source frames always takes the second path.
    """
    if len(letters) == 0:
        raise ValueError("make_nonclass needs at least one letter sequence")
    from_still = rng.random() < 0.5
    letter = letters[int(rng.integers(len(letters)))]

    still = profile.source_frames if profile is not None else None
    if from_still and still is not None:
        if len(still) < 2:
            raise ValueError("Calibration recording needs at least 2 frames")
        length = min(len(still), max(2, len(letter)))
        start = int(rng.integers(0, len(still) - length + 1))
        return still.with_data(
            still.data[start : start + length], label=NONCLASS, subject=still.subject or letter.subject, word=None
        )

    if len(letter) < 2:
        raise ValueError("Letter sequences need at least 2 frames")
    longest = max(2, fraction_count(cfg.nonclass_max_subseq_fraction, len(letter), ceil=False))
    length = int(rng.integers(2, min(longest, len(letter)) + 1))
    start = int(rng.integers(0, len(letter) - length + 1))
    return letter.with_data(
        letter.data[start : start + length], label=NONCLASS, word=None
    )
