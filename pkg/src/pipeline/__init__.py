"""End-to-end word reconstruction, evaluation and the G/K grid search."""

from .evaluation import Profiles, compare_kernels, evaluate, parallel_map, word_label, word_record
from .grid import GridCell, GridResult, grid_search
from .metrics import Metrics, WordRecord, levenshtein, weighted_average
from .reconstruction import (
    Diagnostics,
    PipelineConfig,
    check_model,
    decode_table,
    load_pipeline,
    predict_table,
    reconstruct,
)
from .reporting import (
    KERNEL_TITLES,
    format_grid_table,
    format_kernel_table,
    format_metrics_table,
    grid_to_json,
    kernels_to_json,
    metrics_to_json,
    records_to_jsonl,
)

__all__ = [
    "KERNEL_TITLES",
    "Diagnostics",
    "GridCell",
    "GridResult",
    "Metrics",
    "PipelineConfig",
    "Profiles",
    "WordRecord",
    "check_model",
    "compare_kernels",
    "decode_table",
    "evaluate",
    "format_grid_table",
    "format_kernel_table",
    "format_metrics_table",
    "grid_search",
    "grid_to_json",
    "kernels_to_json",
    "levenshtein",
    "load_pipeline",
    "metrics_to_json",
    "parallel_map",
    "predict_table",
    "reconstruct",
    "records_to_jsonl",
    "weighted_average",
    "word_label",
    "word_record",
]
