"""Random prediction tables and exhaustive oracles for search and correction."""

import math
from collections.abc import Iterable, Mapping
from functools import cache

import numpy as np

from autocorrect import LookupResult
from classifier import log_softmax
from decoder import PredictionTable
from seqcore import CLASSES, class_index

Span = tuple[int, int]


def random_table(
    n_splits: int,
    rng: np.random.Generator,
    drop: float = 0.0,
    raw_logits: bool = False,
) -> PredictionTable:
    """
    A table over every (b, e) pair with random log-probabilities.

    Args:
        n_splits: Split points of the word
        rng: Random stream
        drop: Probability of leaving a pair out (as if it were too short to classify)
        raw_logits: Store the raw draws instead of normalizing them
    """
    entries = {}
    for b in range(n_splits):
        for e in range(b + 1, n_splits + 1):
            if drop and rng.random() < drop:
                continue
            logits = rng.normal(0.0, 2.0, size=len(CLASSES))
            if raw_logits:
                entries[(b, e)] = logits
            else:
                entries[(b, e)] = log_softmax(logits)
    return PredictionTable(n_splits, entries, raw_logits)


def table_from_best(n_splits: int, best: Mapping[Span, tuple[str, float]], floor: float = -10.0) -> PredictionTable:
    """A table where each listed segment scores its letter and every other class scores floor."""
    entries = {}
    for span, (letter, score) in best.items():
        vec = np.full(len(CLASSES), floor)
        vec[class_index(letter)] = score
        entries[span] = vec
    return PredictionTable(n_splits, entries)


def compositions(n: int) -> list[list[Span]]:
    """Every way to cut split points 0..n into consecutive spans."""
    if n == 0:
        return [[]]
    out = []
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            out.append([(0, first), *((b + first, e + first) for b, e in rest)])
    return out


def brute_force_top_k(tab: PredictionTable, K: int, letters: Iterable[str]) -> list[tuple[str, tuple[Span, ...], float]]:
    """
    Rank every spanning trajectory and keep the K best.

    Same order as the search: higher mean, fewer candidates, word, spans.

    Returns:
        (word, spans, mean score) triples, best first
    """
    alphabet = sorted(set(letters))
    ranked = []
    for spans in compositions(tab.n_splits):
        if any(span not in tab for span in spans):
            continue
        choices: list[tuple[str, list[float]]] = [("", [])]
        for span in spans:
            vec = tab[span]
            choices = [(w + ch, s + [float(vec[class_index(ch)])]) for w, s in choices for ch in alphabet]
        for word, scores in choices:
            mean = math.fsum(scores) / len(scores)
            ranked.append(((-mean, len(spans), word, tuple(spans)), (word, tuple(spans), mean)))
    ranked.sort(key=lambda kv: kv[0])
    return [item for _, item in ranked[:K]]


def osa_distance(a: str, b: str) -> int:
    """Restricted Damerau-Levenshtein distance by memoized recursion."""

    @cache
    def d(i: int, j: int) -> int:
        if i == 0:
            return j
        if j == 0:
            return i
        best = min(d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + (a[i - 1] != b[j - 1]))
        if i > 1 and j > 1 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]:
            best = min(best, d(i - 2, j - 2) + 1)
        return best

    return d(len(a), len(b))


def brute_force_lookup(dictionary: Mapping[str, int], word: str, d_max: int) -> LookupResult:
    """Scan every dictionary word; nearest, then most frequent, then alphabetical."""
    w = word.lower()
    best: tuple[int, int, str] | None = None
    for cand, freq in dictionary.items():
        dist = osa_distance(w, cand)
        if dist <= d_max and (best is None or (dist, -freq, cand) < best):
            best = (dist, -freq, cand)
    if best is None:
        return LookupResult(w, d_max + 1, 1)
    return LookupResult(best[2], best[0], -best[1])
