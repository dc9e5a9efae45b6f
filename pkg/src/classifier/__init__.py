"""Per-character sequence classifier.

A stacked LSTM reads a resampled letter sequence; a two-layer feed-forward
decoder turns the final hidden states into 27 logits (A-Z and the non-class).
Everything runs in float64 NumPy with hand-written backpropagation.
"""

from .hparams import HparamRanges, Hparams
from .losses import ce_grad, log_softmax, loss_and_grads, loss_ce
from .model import (
    ForwardCache,
    Model,
    Params,
    backward,
    extract_features,
    forward,
    forward_with_cache,
    init_model,
    parameter_count,
    parameter_shapes,
    stack_inputs,
)
from .model_io import load_model, load_model_file, save_model, save_model_file
from .optimizer import AdamW
from .search import SearchEntry, draw_hparams, random_search
from .training import (
    EpochRecord,
    TrainOpts,
    accuracy,
    evaluate_split,
    featurize_dataset,
    predict_labels,
    predict_logits,
    train,
)

__all__ = [
    "AdamW",
    "EpochRecord",
    "ForwardCache",
    "HparamRanges",
    "Hparams",
    "Model",
    "Params",
    "SearchEntry",
    "TrainOpts",
    "accuracy",
    "backward",
    "ce_grad",
    "draw_hparams",
    "evaluate_split",
    "extract_features",
    "featurize_dataset",
    "forward",
    "forward_with_cache",
    "init_model",
    "load_model",
    "load_model_file",
    "log_softmax",
    "loss_and_grads",
    "loss_ce",
    "parameter_count",
    "parameter_shapes",
    "predict_labels",
    "predict_logits",
    "random_search",
    "save_model",
    "save_model_file",
    "stack_inputs",
    "train",
]
