"""Adversarial weight schedule."""

import math

SCHEDULES = ("progress", "raw-epoch")


def lambda_schedule(p: float) -> float:
    """2 / (1 + exp(-10 p)) - 1: 0 at p = 0, rising toward 1."""
    if p < 0:
        raise ValueError(f"Schedule progress must be non-negative, got {p}")
    return 2.0 / (1.0 + math.exp(-10.0 * p)) - 1.0


def schedule_progress(epoch: int, max_epochs: int, mode: str) -> float:
    """
    Schedule argument for a 0-based epoch index.

    "progress" uses the fraction of training done (epoch / max_epochs);
    "raw-epoch" uses the number of epochs already trained.
    """
    if mode == "progress":
        return epoch / max_epochs
    if mode == "raw-epoch":
        return float(epoch)
    raise ValueError(f"Unknown schedule {mode!r} (expected one of {', '.join(SCHEDULES)})")
