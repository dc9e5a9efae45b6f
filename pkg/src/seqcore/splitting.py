"""Deterministic stratified train/dev/test splitting."""

from collections import defaultdict

import numpy as np

from .sequence import Dataset, Sequence

SPLIT_NAMES = ("train", "dev", "test")


def _largest_remainder(n: int, ratio: tuple[int, ...]) -> list[int]:
    """Integer parts of n proportional to ratio; leftovers go to the largest remainders."""
    total = sum(ratio)
    counts = [n * r // total for r in ratio]
    order = sorted(range(len(ratio)), key=lambda p: (-(n * ratio[p] % total), p))
    for p in order[: n - sum(counts)]:
        counts[p] += 1
    return counts


def split_dataset(
    ds: Dataset, ratio: tuple[int, int, int], seed: int
) -> tuple[Dataset, Dataset, Dataset]:
    """
    Split ds into train, dev and test in proportion to ratio.

    Items are grouped by label (word recordings by word) and each group is
    shuffled with the seed and dealt out proportionally, so every partition keeps
    the label mix. Partition sizes follow exact integer ratio parts of len(ds).
    """
    if len(ratio) != 3 or any(r < 0 for r in ratio) or sum(ratio) == 0:
        raise ValueError(f"Split ratio must be three non-negative integers with a positive sum, got {ratio}")
    if len(ds) == 0:
        raise ValueError("Cannot split an empty dataset")

    rng = np.random.default_rng(seed)
    groups: dict[str, list[Sequence]] = defaultdict(list)
    for s in ds:
        groups[s.label or s.word or ""].append(s)
    keys = sorted(groups)

    targets = _largest_remainder(len(ds), ratio)
    total = sum(ratio)
    cells = {(g, p): len(groups[g]) * ratio[p] // total for g in keys for p in range(3)}
    group_left = {g: len(groups[g]) - sum(cells[g, p] for p in range(3)) for g in keys}
    part_left = [targets[p] - sum(cells[g, p] for g in keys) for p in range(3)]

    # First pass: one extra item per cell, largest fractional quota first
    by_fraction = sorted(
        ((g, p) for g in keys for p in range(3)),
        key=lambda gp: (-(len(groups[gp[0]]) * ratio[gp[1]] % total), keys.index(gp[0]), gp[1]),
    )
    for g, p in by_fraction:
        if group_left[g] > 0 and part_left[p] > 0 and len(groups[g]) * ratio[p] % total:
            cells[g, p] += 1
            group_left[g] -= 1
            part_left[p] -= 1
    # Second pass: whatever is left, in group then partition order
    for g in keys:
        for p in range(3):
            take = min(group_left[g], part_left[p])
            cells[g, p] += take
            group_left[g] -= take
            part_left[p] -= take

    parts: list[list[Sequence]] = [[], [], []]
    for g in keys:
        items = groups[g]
        order = rng.permutation(len(items))
        start = 0
        for p in range(3):
            parts[p].extend(items[i] for i in order[start : start + cells[g, p]])
            start += cells[g, p]

    train, dev, test = (Dataset(tuple(items), name) for items, name in zip(parts, SPLIT_NAMES, strict=True))
    return train, dev, test
