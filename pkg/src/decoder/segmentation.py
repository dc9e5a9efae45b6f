"""Equal-width splitting of a word sequence."""

import math
from dataclasses import dataclass

import config
from errors import SequenceTooShortError
from seqcore import Sequence

MIN_SEGMENT_FRAMES = 2


@dataclass(frozen=True, eq=False)
class SegmentMap:
    """
    Split points of a word sequence.

    Split point k sits at frame k * part_len; segment (begin, end) covers frames
    [begin * part_len, min(end * part_len, word_len)).
    """

    word: Sequence
    granularity: int
    n_splits: int
    part_len: int

    @property
    def word_len(self) -> int:
        return len(self.word)

    def bounds(self, begin: int, end: int) -> tuple[int, int]:
        """Frame range of segment (begin, end)."""
        if not 0 <= begin < end <= self.n_splits:
            raise ValueError(f"Invalid segment ({begin}, {end}) for {self.n_splits} splits")
        return min(begin * self.part_len, self.word_len), min(end * self.part_len, self.word_len)

    def is_classifiable(self, begin: int, end: int) -> bool:
        start, stop = self.bounds(begin, end)
        return stop - start >= MIN_SEGMENT_FRAMES

    def slice(self, begin: int, end: int) -> Sequence:
        start, stop = self.bounds(begin, end)
        return self.word.slice(start, stop)

    def pairs(self) -> list[tuple[int, int]]:
        """Every classifiable (begin, end), ordered by begin then end."""
        return [
            (b, e)
            for b in range(self.n_splits)
            for e in range(b + 1, self.n_splits + 1)
            if self.is_classifiable(b, e)
        ]


def split_counts(word_len: int, granularity: int) -> tuple[int, int]:
    """(N, n): N = ceil(len / 75) * G split parts of n = ceil(len / N) frames."""
    n_splits = math.ceil(word_len / config.FRAMES_PER_LETTER) * granularity
    return n_splits, math.ceil(word_len / n_splits)


def segment(W: Sequence, G: int) -> SegmentMap:
    """Split W into ceil(len / 75) * G equal parts."""
    if G < 1:
        raise ValueError(f"Granularity must be at least 1, got {G}")
    if len(W) < MIN_SEGMENT_FRAMES:
        raise SequenceTooShortError(f"Word sequence needs at least {MIN_SEGMENT_FRAMES} frames, got {len(W)}")
    n_splits, part_len = split_counts(len(W), G)
    return SegmentMap(word=W, granularity=G, n_splits=n_splits, part_len=part_len)
