"""Dictionary correction of decoded words and final-word kernels."""

from .dictionary import FrequencyDictionary, load_dictionary, parse_dictionary
from .edit_distance import damerau_levenshtein
from .index import MAX_SUPPORTED_DISTANCE, CorrectionIndex, LookupResult, build_index, deletes
from .kernels import (
    Kernel,
    Scored,
    ScoredWord,
    apply_kernel,
    confidence_of,
    division_alpha,
    finalize,
    kernel_division,
    kernel_max_vote,
    kernel_power,
    kernel_sum_conf,
    kernel_top1,
    power_alpha,
    score_trajectories,
)

__all__ = [
    "MAX_SUPPORTED_DISTANCE",
    "CorrectionIndex",
    "FrequencyDictionary",
    "Kernel",
    "LookupResult",
    "Scored",
    "ScoredWord",
    "apply_kernel",
    "build_index",
    "confidence_of",
    "damerau_levenshtein",
    "deletes",
    "division_alpha",
    "finalize",
    "kernel_division",
    "kernel_max_vote",
    "kernel_power",
    "kernel_sum_conf",
    "kernel_top1",
    "load_dictionary",
    "parse_dictionary",
    "power_alpha",
    "score_trajectories",
]
