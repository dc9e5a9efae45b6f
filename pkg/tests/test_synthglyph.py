"""Synthetic writers, glyphs and corpus generation."""

from pathlib import Path

import numpy as np
import pytest

import config
from seqcore import LETTERS, Corpus, calibration_mean, load_corpus
from synthglyph import (
    DEFAULT_SPEED,
    TEMPLATES,
    SubjectProfile,
    default_profiles,
    gen_corpus,
    gen_letter,
    gen_still,
    gen_word,
    letter_frames,
    mean_letter_frames,
    ood_profile,
    read_word_list,
    template,
    write_corpus,
)
from tests.visualization import plot_rotation_channels

WRITER = SubjectProfile("s01")


def test_every_letter_has_a_template() -> None:
    assert sorted(TEMPLATES) == list(LETTERS)
    assert template("q") is template("Q")
    with pytest.raises(ValueError, match="No glyph template"):
        template("7")


def test_template_sampling_keeps_endpoints() -> None:
    tpl = template("M")
    pts = tpl.sample(40)
    assert pts.shape == (40, 2)
    assert np.allclose(pts[0], tpl.path[0])
    assert np.allclose(pts[-1], tpl.path[-1])
    assert np.all((pts >= 0.0) & (pts <= 1.0))


def test_letter_lengths_average_one_letter_width() -> None:
    assert mean_letter_frames(DEFAULT_SPEED) == pytest.approx(config.FRAMES_PER_LETTER, abs=1.0)
    lo, hi = config.SYNTH_LETTER_FRAMES
    assert letter_frames(0.001, DEFAULT_SPEED) == lo
    assert letter_frames(1000.0, DEFAULT_SPEED) == hi


def test_generated_letters_are_about_75_frames() -> None:
    rng = np.random.default_rng(0)
    lengths = [len(gen_letter(letter, WRITER, rng)) for letter in LETTERS for _ in range(3)]
    mean = float(np.mean(lengths))
    print(f"Mean generated letter length: {mean:.1f} frames")
    assert 70.0 <= mean <= 80.0
    assert all(config.SYNTH_LETTER_FRAMES[0] <= n <= config.SYNTH_LETTER_FRAMES[1] for n in lengths)


def test_same_seed_same_letter() -> None:
    a = gen_letter("K", WRITER, np.random.default_rng(5))
    b = gen_letter("K", WRITER, np.random.default_rng(5))
    c = gen_letter("K", WRITER, np.random.default_rng(6))
    assert a.same_frames(b)
    assert not a.same_frames(c)
    assert (a.label, a.subject, a.session) == ("K", "s01", "s01-1")
    assert np.all(a.td == config.SYNTH_FRAME_MS)


def test_distinct_letters_differ() -> None:
    quiet = WRITER.noiseless()
    shapes = {letter: gen_letter(letter, quiet, np.random.default_rng(0)) for letter in "OLX"}
    assert not shapes["O"].same_frames(shapes["L"])
    assert not shapes["L"].same_frames(shapes["X"])

    path = plot_rotation_channels(list(shapes.values()), list(shapes), "Noiseless O, L and X", "letters_olx.png")
    assert path.exists()


def test_single_letter_word_is_that_letter() -> None:
    word = gen_word("q", WRITER, np.random.default_rng(9))
    letter = gen_letter("Q", WRITER, np.random.default_rng(9))
    assert np.array_equal(word.data, letter.data)
    assert (word.word, word.label) == ("q", None)


def test_word_length_is_letters_plus_bridges() -> None:
    quiet = WRITER.noiseless()
    word = "brown"
    expected_letters = sum(letter_frames(template(ch).arc_length, quiet.speed) for ch in word)
    for seed in range(10):
        seq = gen_word(word, quiet, np.random.default_rng(seed))
        bridges = len(seq) - expected_letters
        lo, hi = config.SYNTH_TRANSITION_FRAMES
        assert lo * (len(word) - 1) <= bridges <= hi * (len(word) - 1)
    with pytest.raises(ValueError, match="empty word"):
        gen_word("", quiet, np.random.default_rng(0))


def test_still_hold_sits_at_the_resting_pose() -> None:
    still = gen_still(WRITER)
    assert len(still) == config.SYNTH_STILL_FRAMES
    assert np.allclose(calibration_mean(still).mean[:3], WRITER.pose, atol=2.0)
    assert still.duration_ms() >= config.CALIBRATION_MIN_DURATION_MS - config.SYNTH_FRAME_MS


def test_corpus_counts(small_corpus: Corpus) -> None:
    assert len(small_corpus.letters) == 26 * 2
    assert small_corpus.letters.label_counts() == {letter: 2 for letter in LETTERS}
    assert [s.word for s in small_corpus.words] == ["cat", "a", "i"]
    assert sorted(small_corpus.profiles) == ["s01"]


def test_corpus_is_reproducible() -> None:
    kwargs = {"letters_per_class": 1, "word_list": ("fox",), "profiles": default_profiles(2, seed=3), "seed": 4}
    a, b = gen_corpus(**kwargs), gen_corpus(**kwargs)  # type: ignore[arg-type]
    assert len(a.letters) == 52
    assert all(x.same_frames(y) for x, y in zip(a.letters, b.letters, strict=True))
    assert all(x.same_frames(y) for x, y in zip(a.words, b.words, strict=True))
    assert a.letters.subjects() == ["s01", "s02"]


def test_word_repetitions_follow_the_range() -> None:
    corpus = gen_corpus(letters_per_class=0, word_list=("dog", "box"), profiles=[WRITER], reps=(3, 4))
    counts = {w: sum(1 for s in corpus.words if s.word == w) for w in ("dog", "box")}
    assert all(3 <= n <= 4 for n in counts.values())
    assert len(corpus.letters) == 0


def test_default_and_held_out_writers() -> None:
    writers = default_profiles(3, seed=0)
    assert [p.name for p in writers] == ["s01", "s02", "s03"]
    assert len({p.scale for p in writers}) == 3
    held_out = ood_profile()
    assert held_out.tilt == config.SYNTH_OOD_TILT_DEG
    assert held_out.noise_sigma == pytest.approx(2 * config.SYNTH_NOISE_DEG)

    a = gen_letter("S", writers[0].noiseless(), np.random.default_rng(1))
    b = gen_letter("S", held_out.noiseless(), np.random.default_rng(1))
    assert not a.same_frames(b)


def test_profile_validation() -> None:
    with pytest.raises(ValueError, match="name"):
        SubjectProfile("")
    with pytest.raises(ValueError, match="Speed"):
        SubjectProfile("x", speed=0.0)


def test_word_list_file(tmp_path: Path) -> None:
    path = tmp_path / "words.txt"
    path.write_text("# pangram words\nThe\n\nfox\n")
    assert read_word_list(path) == ["the", "fox"]
    path.write_text("fox\nno way\n")
    with pytest.raises(ValueError, match="ASCII letters"):
        read_word_list(path)


def test_written_corpus_loads_back(tmp_path: Path, small_corpus: Corpus) -> None:
    manifest = write_corpus(tmp_path / "synth", small_corpus)
    loaded = load_corpus(manifest)
    assert len(loaded.letters) == len(small_corpus.letters)
    assert [s.word for s in loaded.words] == ["cat", "a", "i"]
    assert np.allclose(loaded.profiles["s01"].mean, small_corpus.profiles["s01"].mean)
