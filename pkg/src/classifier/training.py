"""Minibatch training loop with per-epoch augmentation and early stopping."""

import logging
from collections.abc import Callable, Mapping
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

import config
from augment import AugmentConfig, augment_epoch
from errors import NonFiniteLossError
from seqcore import CalibrationProfile, Dataset, FloatArray, channels_for, class_index, featurize

from .hparams import Hparams
from .losses import IntArray, loss_and_grads, loss_ce
from .model import Model, forward
from .optimizer import AdamW

logger = logging.getLogger(__name__)

ProfileMap = Mapping[str, CalibrationProfile]


@dataclass(frozen=True)
class TrainOpts:
    """Optimizer and loop settings."""

    learning_rate: float = config.LEARNING_RATE
    weight_decay: float = config.CLASSIFIER_WEIGHT_DECAY
    max_epochs: int = config.MAX_EPOCHS
    batch_size: int = config.BATCH_SIZE
    seed: int = config.SEED
    patience: int = config.PATIENCE  # 0 disables early stopping

    def __post_init__(self) -> None:
        """Validate settings."""
        if self.learning_rate < 0:
            raise ValueError(f"learning_rate must be non-negative, got {self.learning_rate}")
        if self.weight_decay < 0:
            raise ValueError(f"weight_decay must be non-negative, got {self.weight_decay}")
        if self.max_epochs < 1 or self.batch_size < 1:
            raise ValueError("max_epochs and batch_size must be at least 1")
        if self.patience < 0:
            raise ValueError(f"patience must be non-negative, got {self.patience}")

    @classmethod
    def from_section(cls, section: config.TrainSection) -> "TrainOpts":
        return cls(
            learning_rate=section.learning_rate,
            weight_decay=section.weight_decay,
            max_epochs=section.max_epochs,
            batch_size=section.batch_size,
            seed=section.seed,
            patience=section.patience,
        )


@dataclass(frozen=True)
class EpochRecord:
    """Metrics of one training epoch."""

    epoch: int
    train_loss: float
    train_acc: float
    dev_loss: float
    dev_acc: float

    def to_json(self) -> dict[str, Any]:
        return asdict(self)


def featurize_dataset(
    ds: Dataset, profiles: ProfileMap | None, h: Hparams
) -> tuple[FloatArray, IntArray]:
    """
    Classifier inputs (B, T, C) and label indices (B,) for a labeled dataset.

    Each item is calibrated with its subject's profile (delta-normalized when
    there is none) and resampled to the model's input size.
    """
    channels = channels_for(h.input_channels)
    profiles = profiles or {}
    X = np.empty((len(ds), h.resample_points, h.input_channels))
    y = np.empty(len(ds), dtype=np.int64)
    for k, seq in enumerate(ds):
        if seq.label is None:
            raise ValueError(f"Dataset item {k} has no label")
        X[k] = featurize(seq, profiles.get(seq.subject), h.resample_points, channels).channels.T
        y[k] = class_index(seq.label)
    return X, y


def predict_logits(model: Model, X: FloatArray, batch_size: int = 256) -> FloatArray:
    """Logits for a large input array, computed in chunks."""
    if len(X) == 0:
        return np.zeros((0, model.hparams.num_classes))
    return np.concatenate([forward(model, X[i : i + batch_size]) for i in range(0, len(X), batch_size)])


def predict_labels(model: Model, X: FloatArray) -> IntArray:
    """Argmax class index per input."""
    return np.asarray(predict_logits(model, X).argmax(axis=1), dtype=np.int64)


def accuracy(model: Model, X: FloatArray, y: IntArray) -> float:
    """Fraction of inputs whose argmax class matches the label."""
    if len(y) == 0:
        return 0.0
    return float((predict_labels(model, X) == y).mean())


def evaluate_split(model: Model, X: FloatArray, y: IntArray) -> tuple[float, float]:
    """(mean cross-entropy, accuracy) on one split."""
    if len(y) == 0:
        return 0.0, 0.0
    logits = predict_logits(model, X)
    return loss_ce(logits, y), float((logits.argmax(axis=1) == y).mean())


def train(
    model: Model,
    train_set: Dataset,
    dev_set: Dataset,
    opts: TrainOpts,
    aug: AugmentConfig | None = None,
    profiles: ProfileMap | None = None,
    on_epoch: Callable[[EpochRecord], None] | None = None,
) -> tuple[Model, list[EpochRecord]]:
    """
    Train a copy of model and return the parameters with the best dev accuracy.

    Args:
        model: Starting point; never modified
        train_set: Labeled training letters (re-augmented every epoch when aug is set)
        dev_set: Labeled dev letters, never augmented
        opts: Optimizer and loop settings
        aug: Per-epoch augmentation, or None to train on train_set as is
        profiles: Calibration profiles keyed by subject
        on_epoch: Called with each epoch's record as soon as it is known

    Returns:
        (best model, per-epoch history)
    """
    if len(train_set) == 0 or len(dev_set) == 0:
        raise ValueError("Training needs non-empty train and dev sets")
    h = model.hparams
    X_dev, y_dev = featurize_dataset(dev_set, profiles, h)
    X_fixed, y_fixed = (None, None) if aug is not None else featurize_dataset(train_set, profiles, h)

    shuffle_rng, aug_rng = np.random.default_rng(opts.seed).spawn(2)
    params = model.working_copy()
    work = Model.wrap(h, params)
    optimizer = AdamW(params, opts.learning_rate, opts.weight_decay)

    best_acc = -1.0
    best_params = model.working_copy()
    since_best = 0
    history: list[EpochRecord] = []
    for epoch in range(1, opts.max_epochs + 1):
        if aug is not None:
            X, y = featurize_dataset(augment_epoch(train_set, profiles, aug, aug_rng), profiles, h)
        else:
            assert X_fixed is not None and y_fixed is not None
            X, y = X_fixed, y_fixed

        order = shuffle_rng.permutation(len(y))
        total_loss = 0.0
        correct = 0
        for batch, start in enumerate(range(0, len(order), opts.batch_size)):
            idx = order[start : start + opts.batch_size]
            loss, grads, logits = loss_and_grads(work, X[idx], y[idx])
            if not np.isfinite(loss):
                raise NonFiniteLossError(epoch, batch, loss, work.parameter_norms())
            optimizer.step(params, grads)
            total_loss += loss * len(idx)
            correct += int((logits.argmax(axis=1) == y[idx]).sum())
            logger.debug("epoch %d batch %d loss %.6f", epoch, batch, loss)

        dev_loss, dev_acc = evaluate_split(work, X_dev, y_dev)
        record = EpochRecord(
            epoch=epoch,
            train_loss=total_loss / len(y),
            train_acc=correct / len(y),
            dev_loss=dev_loss,
            dev_acc=dev_acc,
        )
        history.append(record)
        logger.info(
            "epoch %d: train_loss=%.4f train_acc=%.4f dev_loss=%.4f dev_acc=%.4f",
            epoch,
            record.train_loss,
            record.train_acc,
            dev_loss,
            dev_acc,
        )
        if on_epoch is not None:
            on_epoch(record)

        if dev_acc > best_acc:
            best_acc = dev_acc
            best_params = {name: value.copy() for name, value in params.items()}
            since_best = 0
        else:
            since_best += 1
            if opts.patience and since_best >= opts.patience:
                logger.info("Stopping early after epoch %d (best dev_acc %.4f)", epoch, best_acc)
                break

    return Model(h, best_params), history
