"""Granularity x beam-width grid search."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass

import config
from autocorrect import CorrectionIndex, apply_kernel, score_trajectories
from classifier import Model
from decoder import PredictionTable, Trajectory, trajectory_search
from errors import NoPathError
from seqcore import Dataset, Sequence

from .evaluation import Profiles, parallel_map, word_label, word_record
from .metrics import Metrics, WordRecord
from .reconstruction import PipelineConfig, check_model, predict_table

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridCell:
    """Metrics of one (G, K) setting."""

    granularity: int
    beam_width: int
    metrics: Metrics

    def rank_key(self) -> tuple[float, float, int, int]:
        """Higher accuracy, then lower edit distance, then smaller G, then smaller K."""
        return (-self.metrics.accuracy, self.metrics.mean_edit_distance, self.granularity, self.beam_width)


@dataclass(frozen=True)
class GridResult:
    """All evaluated cells in (G, K) order and the best one."""

    cells: tuple[GridCell, ...]

    @property
    def best(self) -> GridCell:
        return min(self.cells, key=GridCell.rank_key)

    def cell(self, granularity: int, beam_width: int) -> GridCell:
        for c in self.cells:
            if c.granularity == granularity and c.beam_width == beam_width:
                return c
        raise KeyError((granularity, beam_width))

    @property
    def granularities(self) -> list[int]:
        return sorted({c.granularity for c in self.cells})

    @property
    def beam_widths(self) -> list[int]:
        return sorted({c.beam_width for c in self.cells})


def _trajectories_per_width(
    table: PredictionTable, cfg: PipelineConfig, widths: list[int]
) -> dict[int, list[Trajectory]]:
    """
    Top-K trajectories for every K.

    Exact search returns the exhaustive top K, so the largest K serves every
    smaller one as a prefix. Beam search is run once per K.
    """
    if cfg.search_mode == "exact":
        longest = trajectory_search(table, K=max(widths), mode="exact")
        return {k: longest[:k] for k in widths}
    return {k: trajectory_search(table, K=k, mode=cfg.search_mode) for k in widths}


def grid_search(
    words: Dataset,
    cfg: PipelineConfig,
    model: Model,
    index: CorrectionIndex,
    profiles: Profiles | None = None,
    granularities: Iterable[int] = config.GRID_GRANULARITIES,
    beam_widths: Iterable[int] = config.GRID_BEAM_WIDTHS,
    workers: int = 1,
) -> GridResult:
    """
    Evaluate every (G, K) pair with cfg's kernel.

    Segment predictions are computed once per G and shared by all K.
    """
    check_model(cfg, model)
    gs = sorted(set(granularities))
    ks = sorted(set(beam_widths))
    if not gs or not ks:
        raise ValueError("Grid needs at least one granularity and one beam width")
    found = profiles or {}
    cells: list[GridCell] = []
    for G in gs:
        at_g = cfg.with_(granularity=G)

        def run(seq: Sequence, at_g: PipelineConfig = at_g) -> dict[int, WordRecord]:
            word_label(seq)
            try:
                _, table = predict_table(seq, at_g, model, found.get(seq.subject))
                per_k = _trajectories_per_width(table, at_g, ks)
            except NoPathError:
                return {k: word_record(seq, "", []) for k in ks}
            out: dict[int, WordRecord] = {}
            for k, trajectories in per_k.items():
                scored = score_trajectories(trajectories, index)
                prediction = apply_kernel(at_g.kernel, scored, at_g.division_beta, at_g.power_beta)
                out[k] = word_record(seq, prediction, trajectories)
            return out

        per_item = parallel_map(run, words, workers)
        for k in ks:
            metrics = Metrics.from_records(item[k] for item in per_item)
            cells.append(GridCell(G, k, metrics))
            logger.info(
                "G=%d K=%d: accuracy %.4f, mean edit distance %.4f",
                G,
                k,
                metrics.accuracy,
                metrics.mean_edit_distance,
            )
    return GridResult(tuple(cells))
