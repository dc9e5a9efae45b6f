"""Word segmentation and per-segment prediction tables."""

import numpy as np
import pytest

from classifier import forward, log_softmax
from decoder import MIN_SEGMENT_FRAMES, PredictionTable, predict_segments, segment, split_counts
from errors import SequenceTooShortError
from seqcore import Sequence, featurize
from tests.fixtures import TINY_POINTS, random_sequence, tiny_model


def test_two_letter_word_at_granularity_four(rng: np.random.Generator) -> None:
    """150 frames: 2 * 4 = 8 parts of 19 frames, the last one short."""
    sm = segment(random_sequence(rng, 150), 4)
    assert (sm.n_splits, sm.part_len) == (8, 19)
    assert sm.bounds(0, 1) == (0, 19)
    assert sm.bounds(7, 8) == (133, 150)
    assert sm.bounds(0, 8) == (0, 150)
    assert len(sm.slice(7, 8)) == 17


@pytest.mark.parametrize(
    "length, granularity, expected",
    [(75, 1, (1, 75)), (225, 3, (9, 25)), (76, 1, (2, 38)), (10, 9, (9, 2)), (300, 4, (16, 19))],
)
def test_split_counts(length: int, granularity: int, expected: tuple[int, int]) -> None:
    assert split_counts(length, granularity) == expected


def test_random_pairs_stay_inside_the_word(rng: np.random.Generator) -> None:
    for _ in range(200):
        length = int(rng.integers(2, 400))
        sm = segment(random_sequence(rng, length), int(rng.integers(1, 10)))
        pairs = sm.pairs()
        assert pairs == sorted(pairs)
        for b, e in pairs:
            start, stop = sm.bounds(b, e)
            assert 0 <= start < stop <= length
            assert stop - start >= MIN_SEGMENT_FRAMES
        # Unit parts tile the word
        covered = [sm.bounds(k, k + 1) for k in range(sm.n_splits)]
        assert covered[0][0] == 0 and covered[-1][1] == length
        assert all(a[1] == b[0] for a, b in zip(covered, covered[1:]))


def test_segment_rejects_bad_input(rng: np.random.Generator) -> None:
    with pytest.raises(ValueError, match="Granularity"):
        segment(random_sequence(rng, 100), 0)
    with pytest.raises(SequenceTooShortError):
        segment(random_sequence(rng, 1), 4)
    with pytest.raises(ValueError, match="Invalid segment"):
        segment(random_sequence(rng, 100), 2).bounds(2, 2)


def test_single_part_word(rng: np.random.Generator) -> None:
    word = random_sequence(rng, 75)
    tab = predict_segments(tiny_model(), segment(word, 1))
    assert list(tab) == [(0, 1)]


def test_every_pair_is_classified(rng: np.random.Generator) -> None:
    model = tiny_model(seed=1)
    word = random_sequence(rng, 150)
    tab = predict_segments(model, segment(word, 4), batch_size=7)

    assert len(tab) == 36
    for pair in tab:
        assert np.exp(tab[pair]).sum() == pytest.approx(1.0)
    x = featurize(word.slice(19, 57), None, TINY_POINTS).channels.T[None]
    assert np.allclose(tab[(1, 3)], log_softmax(forward(model, x))[0])
    assert tab.ends_from(6) == [7, 8]


def test_segment_scores_ignore_frames_outside_the_segment(rng: np.random.Generator) -> None:
    """Each slice is calibrated against its own first frame, so earlier frames never leak in."""
    model = tiny_model(seed=3)
    word = random_sequence(rng, 150)
    data = word.data.copy()
    data[:19, 1:] += 5.0
    shifted = Sequence(data)

    plain = predict_segments(model, segment(word, 4))
    moved = predict_segments(model, segment(shifted, 4))

    assert np.array_equal(plain[(1, 3)], moved[(1, 3)])
    assert np.array_equal(plain[(2, 8)], moved[(2, 8)])
    assert not np.allclose(plain[(0, 2)], moved[(0, 2)])


def test_raw_logit_tables(rng: np.random.Generator) -> None:
    model = tiny_model(seed=2)
    sm = segment(random_sequence(rng, 80), 2)
    raw = predict_segments(model, sm, raw_logits=True)
    logp = predict_segments(model, sm)
    assert raw.raw_logits
    for pair in raw:
        assert np.allclose(log_softmax(raw[pair]), logp[pair])


def test_table_validation() -> None:
    with pytest.raises(ValueError, match="Invalid segment"):
        PredictionTable(2, {(1, 3): np.zeros(27)})
    with pytest.raises(ValueError, match="27 finite"):
        PredictionTable(2, {(0, 1): np.zeros(26)})
    with pytest.raises(ValueError, match="27 finite"):
        PredictionTable(2, {(0, 1): np.full(27, np.nan)})
    tab = PredictionTable(2, {(0, 1): np.zeros(27)})
    with pytest.raises(ValueError):
        tab[(0, 1)][0] = 1.0
