"""Random hyperparameter search."""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, replace
from typing import Any

import numpy as np

from augment import AugmentConfig
from seqcore import CalibrationProfile, Dataset

from .hparams import HparamRanges, Hparams
from .model import Model, init_model
from .training import EpochRecord, TrainOpts, train

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchEntry:
    """One trained draw of the search."""

    draw: int
    hparams: Hparams
    dev_acc: float
    dev_loss: float
    epochs: int

    def to_json(self) -> dict[str, Any]:
        return {
            "draw": self.draw,
            "dev_acc": self.dev_acc,
            "dev_loss": self.dev_loss,
            "epochs": self.epochs,
            **{k: v for k, v in self.hparams.to_dict().items() if k != "num_classes"},
        }


def draw_hparams(ranges: HparamRanges, budget: int, seed: int, base: Hparams | None = None) -> list[Hparams]:
    """budget independent uniform integer draws from the three ranges."""
    if budget < 1:
        raise ValueError(f"budget must be at least 1, got {budget}")
    rng = np.random.default_rng(seed)
    base = base or Hparams()
    draws = []
    for _ in range(budget):
        draws.append(
            replace(
                base,
                lstm_layers=int(rng.integers(ranges.lstm_layers[0], ranges.lstm_layers[1] + 1)),
                lstm_hidden=int(rng.integers(ranges.lstm_hidden[0], ranges.lstm_hidden[1] + 1)),
                ff_hidden=int(rng.integers(ranges.ff_hidden[0], ranges.ff_hidden[1] + 1)),
            )
        )
    return draws


def _best(history: list[EpochRecord]) -> EpochRecord:
    return max(history, key=lambda r: (r.dev_acc, -r.epoch))


def random_search(
    ranges: HparamRanges,
    budget: int,
    train_set: Dataset,
    dev_set: Dataset,
    opts: TrainOpts,
    seed: int,
    aug: AugmentConfig | None = None,
    profiles: Mapping[str, CalibrationProfile] | None = None,
    base: Hparams | None = None,
) -> tuple[Hparams, list[SearchEntry], Model]:
    """
    Train one model per draw and rank the draws by dev accuracy.

    Returns:
        (best hparams, leaderboard sorted best first, best model)
    """
    entries: list[tuple[SearchEntry, Model]] = []
    for k, h in enumerate(draw_hparams(ranges, budget, seed, base)):
        logger.info("Search draw %d/%d: %s", k + 1, budget, h)
        model, history = train(init_model(h, opts.seed), train_set, dev_set, opts, aug, profiles)
        best = _best(history)
        entries.append((SearchEntry(k, h, best.dev_acc, best.dev_loss, len(history)), model))
    entries.sort(key=lambda em: (-em[0].dev_acc, em[0].dev_loss, em[0].draw))
    return entries[0][0].hparams, [e for e, _ in entries], entries[0][1]
