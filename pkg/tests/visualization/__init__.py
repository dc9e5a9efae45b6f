"""Visualization utilities for test outputs."""

from tests.visualization.glyph_plots import plot_loss_curves, plot_rotation_channels
from tests.visualization.lattice_plots import draw_segment_arcs, draw_trajectory, plot_lattice

__all__ = [
    "draw_segment_arcs",
    "draw_trajectory",
    "plot_lattice",
    "plot_loss_curves",
    "plot_rotation_channels",
]
