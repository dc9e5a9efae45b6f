"""
Final-word selection over the corrected top-K trajectory words.

Every kernel receives (ScoredWord, LookupResult) pairs in trajectory rank order
and returns one corrected word. Except for top1, votes are pooled per
corrected word and the largest total wins; ties go to the alphabetically first
word (max_vote first compares confidence sums).
"""

import math
import sys
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum

import config
from decoder import Trajectory
from errors import EmptyInputError

from .index import CorrectionIndex, LookupResult


class Kernel(StrEnum):
    """Selection strategies."""

    TOP1 = "top1"
    MAXVOTE = "maxvote"
    SUMCONF = "sumconf"
    DIVISION = "division"
    POWER = "power"


@dataclass(frozen=True)
class ScoredWord:
    """A trajectory word (lowercase) and its confidence."""

    word: str
    confidence: float

    def __post_init__(self) -> None:
        """Validate confidence."""
        if not math.isfinite(self.confidence) or self.confidence <= 0:
            raise ValueError(f"Confidence must be positive and finite, got {self.confidence}")


Scored = tuple[ScoredWord, LookupResult]

_MAX_EXPONENT = 700.0


def confidence_of(mean_score: float) -> float:
    """exp(mean score), kept strictly positive and finite."""
    return max(math.exp(min(mean_score, _MAX_EXPONENT)), sys.float_info.min)


def _require(results: Sequence[Scored]) -> None:
    if not results:
        raise EmptyInputError("Kernel needs at least one scored word")


def _argmax(totals: dict[str, list[float]]) -> str:
    sums = {word: math.fsum(values) for word, values in totals.items()}
    return min(sums, key=lambda w: (-sums[w], w))


def kernel_top1(results: Sequence[Scored]) -> str:
    """Correction of the best-ranked trajectory."""
    _require(results)
    return results[0][1].corrected


def kernel_max_vote(results: Sequence[Scored]) -> str:
    """Most frequent correction; ties by confidence sum, then alphabetical."""
    _require(results)
    counts: dict[str, int] = defaultdict(int)
    confs: dict[str, list[float]] = defaultdict(list)
    for scored, looked in results:
        counts[looked.corrected] += 1
        confs[looked.corrected].append(scored.confidence)
    return min(counts, key=lambda w: (-counts[w], -math.fsum(confs[w]), w))


def kernel_sum_conf(results: Sequence[Scored]) -> str:
    """Correction with the largest confidence sum."""
    _require(results)
    totals: dict[str, list[float]] = defaultdict(list)
    for scored, looked in results:
        totals[looked.corrected].append(scored.confidence)
    return _argmax(totals)


def division_alpha(confidence: float, frequency: int, distance: int, beta: float = config.DIVISION_BETA) -> float:
    """c * ln(f) / (beta * d + 1)."""
    return confidence * math.log(frequency) / (beta * distance + 1.0)


def power_alpha(confidence: float, frequency: int, distance: int, beta: float = config.POWER_BETA) -> float:
    """c * ln(f) ** (beta / (d + 1))."""
    return confidence * math.log(frequency) ** (beta / (distance + 1.0))


def kernel_division(results: Sequence[Scored], beta: float = config.DIVISION_BETA) -> str:
    """Largest summed division-combination weight."""
    _require(results)
    totals: dict[str, list[float]] = defaultdict(list)
    for scored, looked in results:
        totals[looked.corrected].append(division_alpha(scored.confidence, looked.frequency, looked.distance, beta))
    return _argmax(totals)


def kernel_power(results: Sequence[Scored], beta: float = config.POWER_BETA) -> str:
    """Largest summed power-combination weight."""
    _require(results)
    totals: dict[str, list[float]] = defaultdict(list)
    for scored, looked in results:
        totals[looked.corrected].append(power_alpha(scored.confidence, looked.frequency, looked.distance, beta))
    return _argmax(totals)


def apply_kernel(
    kernel: Kernel | str,
    results: Sequence[Scored],
    division_beta: float = config.DIVISION_BETA,
    power_beta: float = config.POWER_BETA,
) -> str:
    """Dispatch to the named kernel."""
    match Kernel(kernel):
        case Kernel.TOP1:
            return kernel_top1(results)
        case Kernel.MAXVOTE:
            return kernel_max_vote(results)
        case Kernel.SUMCONF:
            return kernel_sum_conf(results)
        case Kernel.DIVISION:
            return kernel_division(results, division_beta)
        case Kernel.POWER:
            return kernel_power(results, power_beta)


def score_trajectories(trajectories: Sequence[Trajectory], idx: CorrectionIndex) -> list[Scored]:
    """Lowercase each trajectory word, attach exp(mean score) and look it up."""
    return [
        (ScoredWord(t.word.lower(), confidence_of(t.mean_score)), idx.lookup(t.word.lower()))
        for t in trajectories
    ]


def finalize(
    trajectories: Sequence[Trajectory],
    idx: CorrectionIndex,
    kernel: Kernel | str = config.DEFAULT_KERNEL,
    division_beta: float = config.DIVISION_BETA,
    power_beta: float = config.POWER_BETA,
) -> str:
    """Pick the output word from ranked trajectories."""
    if not trajectories:
        raise EmptyInputError("No trajectories to finalize")
    return apply_kernel(kernel, score_trajectories(trajectories, idx), division_beta, power_beta)
