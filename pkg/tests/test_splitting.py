"""Deterministic stratified dataset splits."""

from collections import Counter

import numpy as np
import pytest

from seqcore import LETTERS, Dataset, split_dataset
from tests.fixtures import random_sequence


def _letters(rng: np.random.Generator, labels: list[str]) -> Dataset:
    return Dataset(tuple(random_sequence(rng, 4, label=label) for label in labels))


def _ids(ds: Dataset) -> list[int]:
    return [id(s) for s in ds]


def test_eleven_items_split_nine_one_one(rng: np.random.Generator) -> None:
    ds = _letters(rng, ["A"] * 11)
    train, dev, test = split_dataset(ds, (9, 1, 1), seed=0)
    assert (len(train), len(dev), len(test)) == (9, 1, 1)
    assert (train.split, dev.split, test.split) == ("train", "dev", "test")


def test_eleven_distinct_labels_still_split_nine_one_one(rng: np.random.Generator) -> None:
    ds = _letters(rng, list("ABCDEFGHIJK"))
    sizes = tuple(len(part) for part in split_dataset(ds, (9, 1, 1), seed=3))
    assert sizes == (9, 1, 1)


def test_singleton_labels_next_to_a_large_one(rng: np.random.Generator) -> None:
    """Labels with one recording still land somewhere; the totals keep the exact ratio parts."""
    ds = _letters(rng, ["A"] * 9 + ["B", "NONCLASS"])
    train, dev, test = split_dataset(ds, (9, 1, 1), seed=5)

    assert (len(train), len(dev), len(test)) == (9, 1, 1)
    assert sorted(_ids(train) + _ids(dev) + _ids(test)) == sorted(_ids(ds))
    placed = Counter(s.label for part in (train, dev, test) for s in part)
    assert placed == Counter({"A": 9, "B": 1, "NONCLASS": 1})


def test_all_to_train(rng: np.random.Generator) -> None:
    ds = _letters(rng, ["A", "B", "C"] * 4)
    train, dev, test = split_dataset(ds, (1, 0, 0), seed=0)
    assert len(train) == 12
    assert len(dev) == 0 and len(test) == 0


def test_same_seed_same_partition(rng: np.random.Generator) -> None:
    ds = _letters(rng, [LETTERS[i % 5] for i in range(40)])
    first = split_dataset(ds, (9, 1, 1), seed=7)
    second = split_dataset(ds, (9, 1, 1), seed=7)
    for a, b in zip(first, second, strict=True):
        assert _ids(a) == _ids(b)


def test_different_seed_changes_partition(rng: np.random.Generator) -> None:
    ds = _letters(rng, ["A"] * 30)
    a = split_dataset(ds, (1, 1, 1), seed=1)[0]
    b = split_dataset(ds, (1, 1, 1), seed=2)[0]
    assert _ids(a) != _ids(b)


def test_partitions_are_disjoint_and_exhaustive(rng: np.random.Generator) -> None:
    ds = _letters(rng, [LETTERS[int(i)] for i in rng.integers(0, 26, size=97)])
    parts = split_dataset(ds, (8, 1, 2), seed=11)
    seen = [i for part in parts for i in _ids(part)]
    assert len(seen) == len(set(seen)) == len(ds)
    assert set(seen) == set(_ids(ds))


def test_every_label_keeps_its_share(rng: np.random.Generator) -> None:
    """Eleven recordings of each letter split 9/1/1 within every letter."""
    ds = _letters(rng, [letter for letter in LETTERS for _ in range(11)])
    train, dev, test = split_dataset(ds, (9, 1, 1), seed=0)
    assert Counter(train.labels()) == {letter: 9 for letter in LETTERS}
    assert Counter(dev.labels()) == {letter: 1 for letter in LETTERS}
    assert Counter(test.labels()) == {letter: 1 for letter in LETTERS}


def test_sizes_follow_ratio_parts(rng: np.random.Generator) -> None:
    ds = _letters(rng, [LETTERS[i % 3] for i in range(50)])
    sizes = [len(p) for p in split_dataset(ds, (9, 1, 1), seed=0)]
    assert sum(sizes) == 50
    assert sizes == [41, 5, 4]


def test_invalid_ratio_and_empty_dataset(rng: np.random.Generator) -> None:
    with pytest.raises(ValueError, match="ratio"):
        split_dataset(_letters(rng, ["A"]), (0, 0, 0), seed=0)
    with pytest.raises(ValueError, match="empty"):
        split_dataset(Dataset(), (9, 1, 1), seed=0)
