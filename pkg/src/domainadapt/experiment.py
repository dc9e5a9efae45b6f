"""Original vs fine-tuned vs adapted comparison on a held-out writer."""

import logging
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

import config
from classifier import Model, accuracy, featurize_dataset
from seqcore import CalibrationProfile, Dataset, split_dataset

from .adaptation import AdaptOpts, AdaptRecord, adapt, fine_tune

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransferRow:
    """Accuracies of one setting; the original model has no train/dev figures."""

    setting: str
    train_acc: float | None
    dev_acc: float | None
    test_acc: float

    def to_json(self) -> dict[str, Any]:
        return {"setting": self.setting, "train_acc": self.train_acc, "dev_acc": self.dev_acc, "test_acc": self.test_acc}


@dataclass(frozen=True)
class TransferReport:
    rows: tuple[TransferRow, ...]
    fine_tune_history: tuple[AdaptRecord, ...]
    adapt_history: tuple[AdaptRecord, ...]

    def row(self, setting: str) -> TransferRow:
        return next(r for r in self.rows if r.setting == setting)

    def to_json(self) -> dict[str, Any]:
        return {"rows": [r.to_json() for r in self.rows]}

    def format_table(self) -> str:
        """Aligned text table, one row per setting."""

        def cell(v: float | None) -> str:
            return "\\" if v is None else f"{v:.4f}"

        lines = [f"{'Setting':<20} {'Train':>8} {'Dev':>8} {'Test':>8}"]
        lines.append("-" * len(lines[0]))
        for r in self.rows:
            lines.append(f"{r.setting:<20} {cell(r.train_acc):>8} {cell(r.dev_acc):>8} {cell(r.test_acc):>8}")
        return "\n".join(lines)


def _acc(model: Model, ds: Dataset, profiles: Mapping[str, CalibrationProfile] | None) -> float:
    X, y = featurize_dataset(ds, profiles, model.hparams)
    return accuracy(model, X, y)


def transfer_study(
    base: Model,
    id_set: Dataset,
    ood_set: Dataset,
    opts: AdaptOpts,
    profiles: Mapping[str, CalibrationProfile] | None = None,
    ratio: tuple[int, int, int] = config.SPLIT_RATIO,
) -> TransferReport:
    """
    Compare the frozen base, plain fine-tuning and adversarial adaptation.

    Both sets are split by ratio with opts.seed. Fine-tuning and adaptation train
    on the OOD train split mixed with an ID subset of the ID train split, select
    parameters by OOD dev accuracy, and are scored on the OOD test split.
    """
    ood_train, ood_dev, ood_test = split_dataset(ood_set, ratio, opts.seed)
    id_train, id_dev, _ = split_dataset(id_set, ratio, opts.seed)
    if len(ood_test) == 0:
        raise ValueError("Out-of-domain test split is empty; add recordings or change the ratio")

    original = TransferRow("Original", None, None, _acc(base, ood_test, profiles))
    logger.info("Original model OOD test accuracy: %.4f", original.test_acc)

    tuned, ft_history = fine_tune(base, ood_train, opts, id_train, profiles, id_dev, ood_dev)
    tuned_row = TransferRow(
        "Fine-Tuning",
        _acc(tuned, ood_train, profiles),
        _acc(tuned, ood_dev, profiles) if len(ood_dev) else None,
        _acc(tuned, ood_test, profiles),
    )

    adapted, da_history = adapt(base, id_train, ood_train, opts, profiles, id_dev, ood_dev)
    adapted_row = TransferRow(
        "Domain Adaptation",
        _acc(adapted.base, ood_train, profiles),
        _acc(adapted.base, ood_dev, profiles) if len(ood_dev) else None,
        _acc(adapted.base, ood_test, profiles),
    )
    return TransferReport((original, tuned_row, adapted_row), tuple(ft_history), tuple(da_history))
