"""Orientation channel and training curve plots."""

from pathlib import Path

import matplotlib.pyplot as plt

from seqcore import ROTATION_CHANNELS, Sequence, cumulative_time

OUTPUT_DIR = Path(__file__).parent.parent / "output" / "glyphs"


def plot_rotation_channels(sequences: list[Sequence], labels: list[str], title: str, filename: str) -> Path:
    """
    Plot yaw, pitch and roll of several sequences over time, one panel per channel.

    Args:
        sequences: Sequences to overlay
        labels: Legend label per sequence
        title: Figure title
        filename: Output filename (saved in tests/output/glyphs/)

    Returns:
        Path of the written image
    """
    fig, axes = plt.subplots(len(ROTATION_CHANNELS), 1, figsize=(10, 8), sharex=True)
    for seq, label in zip(sequences, labels, strict=True):
        t = cumulative_time(seq.td)
        for ax, values in zip(axes, seq.channels().T, strict=True):
            ax.plot(t, values, linewidth=1.5, alpha=0.8, label=label)
    for ax, name in zip(axes, ROTATION_CHANNELS, strict=True):
        ax.set_ylabel(f"{name} (deg)", fontsize=11)
        ax.grid(alpha=0.3)
    axes[0].legend(fontsize=9, loc="upper right")
    axes[-1].set_xlabel("Time (ms)", fontsize=12, fontweight="bold")
    fig.suptitle(title, fontsize=14, fontweight="bold")

    plt.tight_layout()
    OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
    path = OUTPUT_DIR / filename
    plt.savefig(path, dpi=100, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_loss_curves(curves: dict[str, list[float]], title: str, filename: str) -> Path:
    """Plot named per-epoch series (losses or accuracies) on one axes."""
    fig, ax = plt.subplots(figsize=(10, 6))
    for name, values in curves.items():
        ax.plot(range(1, len(values) + 1), values, linewidth=2, marker="o", markersize=3, label=name)
    ax.set_xlabel("Epoch", fontsize=12, fontweight="bold")
    ax.set_title(title, fontsize=14, fontweight="bold")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=10)

    plt.tight_layout()
    OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
    path = OUTPUT_DIR / filename
    plt.savefig(path, dpi=100, bbox_inches="tight")
    plt.close(fig)
    return path
