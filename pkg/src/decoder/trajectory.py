"""
Top-K trajectory search over a segment lattice.

The search walks split points from the end of the word back to the start.
Every node keeps its best suffixes: chains of candidates running from that
node to the last split point. A suffix is extended backwards by prepending a
candidate (begin, node, letter). Chains are ranked by the exact mean of their
candidate scores, then fewer candidates, then word, then spans.

Two retention policies are available:

    exact  keep the top K per node and per candidate count. Because the mean of a
           chain with a fixed first candidate and fixed length only depends on
           its suffix sum, this loses nothing: the result equals ranking every
           spanning trajectory, for any K.
    beam   keep the top K per node, ranked by the suffix mean alone.
"""

import bisect
import math
from collections.abc import Iterable
from dataclasses import dataclass, field

import config
from errors import NoPathError
from seqcore import LETTERS, class_index

from .prediction import PredictionTable

SEARCH_MODES = ("exact", "beam")

Span = tuple[int, int]
SortKey = tuple[float, int, str, tuple[Span, ...]]


@dataclass(frozen=True)
class Candidate:
    """One letter hypothesis for one segment."""

    seg_begin: int
    seg_end: int
    ch: str
    score: float

    def __post_init__(self) -> None:
        """Validate bounds and letter."""
        if not 0 <= self.seg_begin < self.seg_end:
            raise ValueError(f"Candidate needs 0 <= begin < end, got ({self.seg_begin}, {self.seg_end})")
        if self.ch not in LETTERS:
            raise ValueError(f"Candidate letter must be A-Z, got {self.ch!r}")


@dataclass(frozen=True)
class Trajectory:
    """A contiguous chain of candidates."""

    candidates: tuple[Candidate, ...]
    mean_score: float = field(init=False)
    word: str = field(init=False)

    def __post_init__(self) -> None:
        """Check contiguity and fix the derived fields."""
        if not self.candidates:
            raise ValueError("Trajectory needs at least one candidate")
        for a, b in zip(self.candidates, self.candidates[1:], strict=False):
            if a.seg_end != b.seg_begin:
                raise ValueError(f"Candidates ({a.seg_begin}, {a.seg_end}) and ({b.seg_begin}, {b.seg_end}) are not contiguous")
        object.__setattr__(self, "mean_score", mean_of(c.score for c in self.candidates))
        object.__setattr__(self, "word", "".join(c.ch for c in self.candidates))

    @property
    def spans(self) -> tuple[Span, ...]:
        return tuple((c.seg_begin, c.seg_end) for c in self.candidates)

    @property
    def begin(self) -> int:
        return self.candidates[0].seg_begin

    @property
    def end(self) -> int:
        return self.candidates[-1].seg_end

    def __len__(self) -> int:
        return len(self.candidates)

    def sort_key(self) -> SortKey:
        """Best first: higher mean, then fewer candidates, then word, then spans."""
        return (-self.mean_score, len(self.candidates), self.word, self.spans)


def mean_of(scores: Iterable[float]) -> float:
    """Correctly rounded sum divided by the count."""
    values = list(scores)
    return math.fsum(values) / len(values)


@dataclass(frozen=True)
class _Suffix:
    scores: tuple[float, ...]
    word: str
    spans: tuple[Span, ...]

    def extended(self, begin: int, end: int, ch: str, score: float) -> "_Suffix":
        return _Suffix((score, *self.scores), ch + self.word, ((begin, end), *self.spans))

    def key(self) -> SortKey:
        return (-mean_of(self.scores), len(self.scores), self.word, self.spans)


_EMPTY = _Suffix((), "", ())


class _TopK:
    """Sorted list of the K smallest (key, item) pairs seen so far."""

    def __init__(self, k: int) -> None:
        self.k = k
        self.keys: list[SortKey] = []
        self.items: list[_Suffix] = []

    def full(self) -> bool:
        return len(self.keys) >= self.k

    def worst(self) -> SortKey:
        return self.keys[-1]

    def offer(self, key: SortKey, item: _Suffix) -> bool:
        """Insert if it ranks among the K best; returns False when rejected."""
        if self.full() and key >= self.worst():
            return False
        at = bisect.bisect_left(self.keys, key)
        self.keys.insert(at, key)
        self.items.insert(at, item)
        if len(self.keys) > self.k:
            self.keys.pop()
            self.items.pop()
        return True


def _letter_options(tab: PredictionTable, letters: tuple[str, ...]) -> dict[Span, list[tuple[float, str]]]:
    """Per segment, (score, letter) sorted best first, ties alphabetical."""
    cols = [class_index(ch) for ch in letters]
    options = {}
    for pair in tab:
        vec = tab[pair]
        options[pair] = sorted(((float(vec[c]), ch) for c, ch in zip(cols, letters, strict=True)), key=lambda sc: (-sc[0], sc[1]))
    return options


def _search_exact(
    tab: PredictionTable, N: int, K: int, options: dict[Span, list[tuple[float, str]]]
) -> dict[int, dict[int, list[_Suffix]]]:
    # nodes[n][c]: best K suffixes from n to N with c candidates, sorted best first
    nodes: dict[int, dict[int, list[_Suffix]]] = {N: {0: [_EMPTY]}}
    for n in range(N - 1, -1, -1):
        by_count: dict[int, _TopK] = {}
        for end in tab.ends_from(n):
            for count, suffixes in nodes.get(end, {}).items():
                top = by_count.setdefault(count + 1, _TopK(K))
                for score, ch in options[(n, end)]:
                    first = suffixes[0].extended(n, end, ch, score)
                    if not top.offer(first.key(), first):
                        break  # later letters score no better
                    for suffix in suffixes[1:]:
                        cand = suffix.extended(n, end, ch, score)
                        if not top.offer(cand.key(), cand):
                            break  # later suffixes of this count score no better
        nodes[n] = {c: t.items for c, t in by_count.items() if t.items}
    return nodes


def _search_beam(
    tab: PredictionTable, N: int, K: int, options: dict[Span, list[tuple[float, str]]]
) -> dict[int, dict[int, list[_Suffix]]]:
    beams: dict[int, list[_Suffix]] = {N: [_EMPTY]}
    for n in range(N - 1, -1, -1):
        top = _TopK(K)
        for end in tab.ends_from(n):
            for suffix in beams.get(end, []):
                for score, ch in options[(n, end)]:
                    cand = suffix.extended(n, end, ch, score)
                    top.offer(cand.key(), cand)
        beams[n] = top.items
    nodes: dict[int, dict[int, list[_Suffix]]] = {}
    for n, items in beams.items():
        grouped: dict[int, list[_Suffix]] = {}
        for s in items:
            grouped.setdefault(len(s.scores), []).append(s)
        nodes[n] = grouped
    return nodes


def _to_trajectory(s: _Suffix) -> Trajectory:
    return Trajectory(
        tuple(Candidate(b, e, ch, score) for (b, e), ch, score in zip(s.spans, s.word, s.scores, strict=True))
    )


def suffix_tables(
    tab: PredictionTable,
    K: int = config.DEFAULT_BEAM_WIDTH,
    mode: str = config.DEFAULT_SEARCH_MODE,
    letters: Iterable[str] = LETTERS,
) -> dict[int, list[Trajectory]]:
    """
    Retained suffixes at every split point, each list sorted best first.

    In exact mode a node may hold up to K suffixes per candidate count; the
    list at node 0 is not truncated to K here.
    """
    if K < 1:
        raise ValueError(f"Beam width must be at least 1, got {K}")
    if mode not in SEARCH_MODES:
        raise ValueError(f"Unknown search mode {mode!r} (expected one of {', '.join(SEARCH_MODES)})")
    alphabet = tuple(sorted(set(letters)))
    if not alphabet:
        raise ValueError("Letter alphabet is empty")
    options = _letter_options(tab, alphabet)
    N = tab.n_splits
    search = _search_exact if mode == "exact" else _search_beam
    nodes = search(tab, N, K, options)
    tables: dict[int, list[Trajectory]] = {}
    for n, by_count in nodes.items():
        if n == N:
            continue
        merged = sorted((s for group in by_count.values() for s in group), key=_Suffix.key)
        tables[n] = [_to_trajectory(s) for s in merged]
    return tables


def trajectory_search(
    tab: PredictionTable,
    N: int | None = None,
    K: int = config.DEFAULT_BEAM_WIDTH,
    mode: str = config.DEFAULT_SEARCH_MODE,
    letters: Iterable[str] = LETTERS,
) -> list[Trajectory]:
    """
    The K best trajectories spanning split points 0 to N, best first.

    The non-class entry of the table is never used.

    Raises:
        NoPathError: if no chain of classifiable segments spans the word
    """
    if N is not None and N != tab.n_splits:
        raise ValueError(f"N={N} does not match the table's {tab.n_splits} splits")
    tables = suffix_tables(tab, K, mode, letters)
    found = tables.get(0, [])
    if not found:
        raise NoPathError(f"No trajectory spans all {tab.n_splits} split parts")
    return found[:K]
