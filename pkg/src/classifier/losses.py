"""Softmax cross-entropy."""

import numpy as np
import numpy.typing as npt
from scipy.special import log_softmax as _log_softmax
from scipy.special import softmax

import config
from seqcore import FloatArray

from .model import Model, Params, backward, forward_with_cache

IntArray = npt.NDArray[np.int64]


def log_softmax(logits: FloatArray) -> FloatArray:
    """Max-shifted log-softmax over the last axis."""
    return np.asarray(_log_softmax(np.asarray(logits, dtype=np.float64), axis=-1), dtype=np.float64)


def _check_labels(labels: IntArray, n_classes: int) -> None:
    if labels.size and (labels.min() < 0 or labels.max() >= n_classes):
        raise ValueError(f"Labels must lie in [0, {n_classes}), got range [{labels.min()}, {labels.max()}]")


def loss_ce(logits: FloatArray, labels: int | IntArray) -> float:
    """
    Cross-entropy of logits against class indices.

    A single (27,) logit vector with an int label gives that item's loss; a
    (B, 27) batch gives the mean over the batch.
    """
    logp = log_softmax(logits)
    y = np.atleast_1d(np.asarray(labels, dtype=np.int64))
    _check_labels(y, config.NUM_CLASSES)
    logp = logp.reshape(-1, logp.shape[-1])
    if len(y) != len(logp):
        raise ValueError(f"Got {len(logp)} logit rows but {len(y)} labels")
    return float(-logp[np.arange(len(y)), y].mean())


def ce_grad(logits: FloatArray, labels: IntArray) -> FloatArray:
    """dLoss/dlogits of the batch-mean cross-entropy."""
    y = np.asarray(labels, dtype=np.int64)
    _check_labels(y, config.NUM_CLASSES)
    grad = np.asarray(softmax(logits, axis=-1), dtype=np.float64)
    grad[np.arange(len(y)), y] -= 1.0
    return grad / len(y)


def loss_and_grads(model: Model, X: FloatArray, labels: IntArray) -> tuple[float, Params, FloatArray]:
    """
    Batch-mean cross-entropy and its parameter gradients.

    Returns:
        (loss, grads, logits)
    """
    logits, cache = forward_with_cache(model, X)
    loss = loss_ce(logits, labels)
    grads = backward(model, cache, ce_grad(logits, labels))
    return loss, grads, logits
