"""Adversarial adaptation and the matching plain fine-tuning loop."""

import logging
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np

import config
from classifier import (
    AdamW,
    Model,
    Params,
    accuracy,
    backward,
    ce_grad,
    featurize_dataset,
    forward_with_cache,
    loss_and_grads,
    loss_ce,
)
from classifier.losses import IntArray
from errors import EmptyInputError, NonFiniteLossError
from seqcore import CalibrationProfile, Dataset, FloatArray

from .domain_model import HEAD_NAMES, DomainModel, domain_backward, head_forward, init_domain_model
from .losses import bce, bce_grad_score
from .schedule import lambda_schedule, schedule_progress

logger = logging.getLogger(__name__)

ProfileMap = Mapping[str, CalibrationProfile]


@dataclass(frozen=True)
class AdaptOpts:
    """Adaptation settings."""

    max_epochs: int = config.ADAPT_MAX_EPOCHS
    learning_rate: float = config.LEARNING_RATE
    weight_decay: float = config.ADAPT_WEIGHT_DECAY
    batch_size: int = 32
    seed: int = config.SEED
    schedule: str = config.DEFAULT_SCHEDULE
    id_ratio: float = config.ADAPT_ID_RATIO
    head_hidden: int | None = None
    lambda_override: float | None = None  # pin lambda for every epoch

    def __post_init__(self) -> None:
        """Validate settings."""
        if self.max_epochs < 1:
            raise ValueError(f"max_epochs must be at least 1, got {self.max_epochs}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be at least 1, got {self.batch_size}")
        if self.learning_rate < 0 or self.weight_decay < 0:
            raise ValueError("learning_rate and weight_decay must be non-negative")
        if self.id_ratio < 0:
            raise ValueError(f"id_ratio must be non-negative, got {self.id_ratio}")
        schedule_progress(0, self.max_epochs, self.schedule)
        if self.lambda_override is not None and not 0 <= self.lambda_override < 1:
            raise ValueError(f"lambda_override must be in [0, 1), got {self.lambda_override}")

    @classmethod
    def from_section(cls, section: config.AdaptSection) -> "AdaptOpts":
        return cls(
            max_epochs=section.max_epochs,
            learning_rate=section.learning_rate,
            weight_decay=section.weight_decay,
            batch_size=section.batch_size,
            seed=section.seed,
            schedule=section.schedule,
            id_ratio=section.id_ratio,
        )

    def lambda_at(self, epoch: int) -> float:
        """Adversarial weight for a 0-based epoch."""
        if self.lambda_override is not None:
            return self.lambda_override
        return lambda_schedule(schedule_progress(epoch, self.max_epochs, self.schedule))


@dataclass(frozen=True)
class AdaptRecord:
    """Metrics of one adaptation (or fine-tuning) epoch."""

    epoch: int
    lam: float
    loss: float
    char_loss: float
    dom_loss: float
    id_dev_acc: float | None
    ood_dev_acc: float | None
    dom_acc: float | None

    def to_json(self) -> dict[str, Any]:
        return {
            "epoch": self.epoch,
            "lambda": self.lam,
            "loss": self.loss,
            "char_loss": self.char_loss,
            "dom_loss": self.dom_loss,
            "id_dev_acc": self.id_dev_acc,
            "ood_dev_acc": self.ood_dev_acc,
            "dom_acc": self.dom_acc,
        }


@dataclass(frozen=True)
class AdaptLosses:
    total: float
    char: float
    dom: float


def adapt_gradients(
    dm: DomainModel, X: FloatArray, y_c: IntArray, y_d: IntArray, lam: float
) -> tuple[AdaptLosses, Params]:
    """
    Losses and gradients for one batch of the adversarial objective.

    The classifier parameters get the gradient of L = L_chr - lam * L_dom: the
    letter head only sees L_chr and the feature extractor receives the domain
    gradient with its sign reversed and scaled by lam. The domain head gets the
    plain gradient of L_dom, so it keeps learning to tell the domains apart.

    Returns:
        (losses, gradients keyed by classifier and head parameter names)
    """
    logits, cache = forward_with_cache(dm.base, X)
    hc = head_forward(dm.head, cache.features)
    l_chr = loss_ce(logits, y_c)
    l_dom = bce(hc.prob, y_d)

    head_grads, dfeat_dom = domain_backward(dm.head, hc, bce_grad_score(hc.prob, y_d))
    grads = backward(dm.base, cache, ce_grad(logits, y_c), dfeatures=-lam * dfeat_dom)
    grads.update(head_grads)
    return AdaptLosses(l_chr - lam * l_dom, l_chr, l_dom), grads


def domain_accuracy(dm: DomainModel, X: FloatArray, y_d: IntArray) -> float:
    """Fraction of inputs whose domain the head predicts correctly at threshold 1/2."""
    if len(y_d) == 0:
        return 0.0
    prob = head_forward(dm.head, forward_with_cache(dm.base, X)[1].features).prob
    return float(((prob >= 0.5).astype(np.int64) == y_d).mean())


def sample_id_subset(id_set: Dataset, n_ood: int, ratio: float, rng: np.random.Generator) -> Dataset:
    """ceil(ratio * n_ood) ID items without replacement, in their original order."""
    size = min(len(id_set), math.ceil(ratio * n_ood - 1e-9))
    picked = np.sort(rng.choice(len(id_set), size=size, replace=False)) if size else np.array([], dtype=np.int64)
    return Dataset(tuple(id_set[int(i)] for i in picked), id_set.split)


@dataclass
class _Prepared:
    X: FloatArray
    y_c: IntArray
    y_d: IntArray
    rng: np.random.Generator


def _prepare(
    base: Model,
    id_set: Dataset | None,
    ood_set: Dataset,
    opts: AdaptOpts,
    profiles: ProfileMap | None,
) -> _Prepared:
    """Mixed ID + OOD training arrays and the shared data stream."""
    if len(ood_set) == 0:
        raise EmptyInputError("Out-of-domain set is empty")
    rng = np.random.default_rng([opts.seed, 0])
    id_sub = sample_id_subset(id_set, len(ood_set), opts.id_ratio, rng) if id_set else Dataset()
    h = base.hparams
    X_ood, y_ood = featurize_dataset(ood_set, profiles, h)
    if len(id_sub):
        X_id, y_id = featurize_dataset(id_sub, profiles, h)
        X = np.concatenate([X_id, X_ood])
        y_c = np.concatenate([y_id, y_ood])
    else:
        X, y_c = X_ood, y_ood
    y_d = np.concatenate([np.zeros(len(id_sub), dtype=np.int64), np.ones(len(ood_set), dtype=np.int64)])
    logger.info("Adaptation set: %d in-domain + %d out-of-domain items", len(id_sub), len(ood_set))
    return _Prepared(X, y_c, y_d, rng)


def _dev_accuracy(model: Model, dev: Dataset | None, profiles: ProfileMap | None) -> float | None:
    if dev is None or len(dev) == 0:
        return None
    X, y = featurize_dataset(dev, profiles, model.hparams)
    return accuracy(model, X, y)


def adapt(
    base: Model,
    id_set: Dataset,
    ood_set: Dataset,
    opts: AdaptOpts,
    profiles: ProfileMap | None = None,
    id_dev: Dataset | None = None,
    ood_dev: Dataset | None = None,
    on_epoch: Callable[[AdaptRecord], None] | None = None,
) -> tuple[DomainModel, list[AdaptRecord]]:
    """
    Adversarially adapt a pretrained classifier to an out-of-domain writer.

    Training mixes an ID subset (about id_ratio times the OOD size) with the whole
    OOD set; ID items carry domain label 0 and OOD items label 1. base is never
    modified. When ood_dev is given the parameters with the best OOD dev accuracy
    are returned, otherwise those after the last epoch.
    """
    data = _prepare(base, id_set, ood_set, opts, profiles)
    start = init_domain_model(base, [opts.seed, 1], opts.head_hidden)
    params: Params = start.base.working_copy()
    params.update({name: start.head[name].copy() for name in HEAD_NAMES})
    base_names = list(start.base.params)

    def view() -> DomainModel:
        return DomainModel(
            Model.wrap(base.hparams, {n: params[n] for n in base_names}),
            {n: params[n] for n in HEAD_NAMES},
        )

    optimizer = AdamW(params, opts.learning_rate, opts.weight_decay)
    best: tuple[float, Params] | None = None
    history: list[AdaptRecord] = []
    n = len(data.y_c)
    for epoch in range(opts.max_epochs):
        lam = opts.lambda_at(epoch)
        order = data.rng.permutation(n)
        totals = np.zeros(3)
        for batch, s in enumerate(range(0, n, opts.batch_size)):
            idx = order[s : s + opts.batch_size]
            losses, grads = adapt_gradients(view(), data.X[idx], data.y_c[idx], data.y_d[idx], lam)
            if not np.isfinite(losses.total):
                raise NonFiniteLossError(epoch + 1, batch, losses.total, view().base.parameter_norms())
            optimizer.step(params, grads)
            totals += len(idx) * np.array([losses.total, losses.char, losses.dom])

        current = view()
        record = AdaptRecord(
            epoch=epoch + 1,
            lam=lam,
            loss=float(totals[0] / n),
            char_loss=float(totals[1] / n),
            dom_loss=float(totals[2] / n),
            id_dev_acc=_dev_accuracy(current.base, id_dev, profiles),
            ood_dev_acc=_dev_accuracy(current.base, ood_dev, profiles),
            dom_acc=domain_accuracy(current, data.X, data.y_d),
        )
        history.append(record)
        logger.info(
            "adapt epoch %d: lambda=%.4f loss=%.4f char=%.4f dom=%.4f ood_dev_acc=%s",
            record.epoch,
            lam,
            record.loss,
            record.char_loss,
            record.dom_loss,
            record.ood_dev_acc,
        )
        if on_epoch is not None:
            on_epoch(record)
        if record.ood_dev_acc is not None and (best is None or record.ood_dev_acc > best[0]):
            best = (record.ood_dev_acc, {k: v.copy() for k, v in params.items()})

    final = best[1] if best is not None else params
    return (
        DomainModel(Model(base.hparams, {n: final[n] for n in base_names}), {n: final[n].copy() for n in HEAD_NAMES}),
        history,
    )


def fine_tune(
    base: Model,
    ood_set: Dataset,
    opts: AdaptOpts,
    id_set: Dataset | None = None,
    profiles: ProfileMap | None = None,
    id_dev: Dataset | None = None,
    ood_dev: Dataset | None = None,
    on_epoch: Callable[[AdaptRecord], None] | None = None,
) -> tuple[Model, list[AdaptRecord]]:
    """
    Plain cross-entropy fine-tuning with exactly the batches adapt() would use.

    With id_set given, the same ID subset is mixed in. Records carry lambda 0 and
    no domain metrics.
    """
    data = _prepare(base, id_set, ood_set, opts, profiles)
    params = base.working_copy()
    work = Model.wrap(base.hparams, params)
    optimizer = AdamW(params, opts.learning_rate, opts.weight_decay)
    best: tuple[float, Params] | None = None
    history: list[AdaptRecord] = []
    n = len(data.y_c)
    for epoch in range(opts.max_epochs):
        order = data.rng.permutation(n)
        total = 0.0
        for batch, s in enumerate(range(0, n, opts.batch_size)):
            idx = order[s : s + opts.batch_size]
            loss, grads, _ = loss_and_grads(work, data.X[idx], data.y_c[idx])
            if not np.isfinite(loss):
                raise NonFiniteLossError(epoch + 1, batch, loss, work.parameter_norms())
            optimizer.step(params, grads)
            total += loss * len(idx)

        record = AdaptRecord(
            epoch=epoch + 1,
            lam=0.0,
            loss=total / n,
            char_loss=total / n,
            dom_loss=0.0,
            id_dev_acc=_dev_accuracy(work, id_dev, profiles),
            ood_dev_acc=_dev_accuracy(work, ood_dev, profiles),
            dom_acc=None,
        )
        history.append(record)
        logger.info("fine-tune epoch %d: loss=%.4f ood_dev_acc=%s", record.epoch, record.loss, record.ood_dev_acc)
        if on_epoch is not None:
            on_epoch(record)
        if record.ood_dev_acc is not None and (best is None or record.ood_dev_acc > best[0]):
            best = (record.ood_dev_acc, {k: v.copy() for k, v in params.items()})

    return Model(base.hparams, best[1] if best is not None else params), history
