"""Symmetric-delete correction index."""

from collections import defaultdict
from dataclasses import dataclass

import config

from .dictionary import FrequencyDictionary
from .edit_distance import damerau_levenshtein

MAX_SUPPORTED_DISTANCE = 3


@dataclass(frozen=True)
class LookupResult:
    """Correction of one word; distance max_distance + 1 means no match."""

    corrected: str
    distance: int
    frequency: int


def deletes(word: str, max_distance: int) -> set[str]:
    """word plus every string reachable by removing up to max_distance characters."""
    found = {word}
    frontier = {word}
    for _ in range(max_distance):
        frontier = {w[:i] + w[i + 1 :] for w in frontier for i in range(len(w))} - found
        found |= frontier
    return found


class CorrectionIndex:
    """Maps delete-variants of dictionary words back to the words they came from."""

    def __init__(self, dictionary: FrequencyDictionary, max_distance: int = config.MAX_EDIT_DISTANCE) -> None:
        """
        Build the variant map.

        Args:
            dictionary: Words and frequencies to correct towards
            max_distance: Largest edit distance a correction may have (0-3)
        """
        if not 0 <= max_distance <= MAX_SUPPORTED_DISTANCE:
            raise ValueError(f"max_distance must be in [0, {MAX_SUPPORTED_DISTANCE}], got {max_distance}")
        self.dictionary = dictionary
        self.max_distance = max_distance
        variants: dict[str, set[str]] = defaultdict(set)
        for word in sorted(dictionary):
            for variant in deletes(word, max_distance):
                variants[variant].add(word)
        self.variants: dict[str, frozenset[str]] = {v: frozenset(ws) for v, ws in variants.items()}

    def __len__(self) -> int:
        return len(self.variants)

    def lookup(self, word: str) -> LookupResult:
        """
        Closest dictionary word within max_distance.

        Ties go to the more frequent word, then the alphabetically first. Without
        a match the input comes back with distance max_distance + 1 and
        frequency 1.
        """
        w = word.lower()
        if not w:
            raise ValueError("Cannot look up an empty word")
        d_max = self.max_distance
        candidates: set[str] = set()
        for variant in deletes(w, d_max):
            candidates |= self.variants.get(variant, frozenset())

        best: tuple[int, int, str] | None = None
        for cand in candidates:
            if abs(len(cand) - len(w)) > d_max:
                continue
            dist = damerau_levenshtein(w, cand)
            if dist > d_max:
                continue
            key = (dist, -self.dictionary.frequency(cand), cand)
            if best is None or key < best:
                best = key
        if best is None:
            return LookupResult(w, d_max + 1, 1)
        return LookupResult(best[2], best[0], -best[1])


def build_index(dictionary: FrequencyDictionary, d_max: int = config.MAX_EDIT_DISTANCE) -> CorrectionIndex:
    """Build a correction index over dictionary."""
    return CorrectionIndex(dictionary, d_max)
