"""
Word reconstruction: segment, classify, search, correct.

reconstruct() runs the whole chain on one word recording. The intermediate
stages are exposed separately so evaluation and the grid search can reuse a
prediction table across beam widths and kernels.
"""

import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

import config
from autocorrect import CorrectionIndex, Kernel, Scored, apply_kernel, build_index, load_dictionary, score_trajectories
from classifier import Model, load_model_file
from config import PipelineSection
from decoder import (
    SEARCH_MODES,
    PredictionTable,
    SegmentMap,
    Trajectory,
    lattice_to_json,
    predict_segments,
    segment,
    trajectory_search,
)
from errors import ConfigError
from seqcore import CalibrationProfile, Sequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PipelineConfig:
    """Settings of one reconstruction run."""

    model_path: str | None = None
    dictionary: str = str(config.DICTIONARY_PATH)
    granularity: int = config.DEFAULT_GRANULARITY
    beam_width: int = config.DEFAULT_BEAM_WIDTH
    kernel: str = config.DEFAULT_KERNEL
    division_beta: float = config.DIVISION_BETA
    power_beta: float = config.POWER_BETA
    max_edit_distance: int = config.MAX_EDIT_DISTANCE
    search_mode: str = config.DEFAULT_SEARCH_MODE
    raw_logits: bool = False
    input_channels: int | None = None  # None follows the model

    def __post_init__(self) -> None:
        """Validate settings."""
        if self.granularity < 1:
            raise ValueError(f"Granularity must be at least 1, got {self.granularity}")
        if self.beam_width < 1:
            raise ValueError(f"Beam width must be at least 1, got {self.beam_width}")
        if self.kernel not in {k.value for k in Kernel}:
            raise ValueError(f"Unknown kernel '{self.kernel}'. Available: {[k.value for k in Kernel]}")
        if self.search_mode not in SEARCH_MODES:
            raise ValueError(f"Unknown search mode '{self.search_mode}'. Available: {list(SEARCH_MODES)}")
        if self.input_channels not in (None, 3, 6):
            raise ValueError(f"input_channels must be 3 or 6, got {self.input_channels}")

    @classmethod
    def from_section(cls, section: PipelineSection, model_path: str | None = None) -> "PipelineConfig":
        return cls(
            model_path=model_path,
            dictionary=section.dictionary,
            granularity=section.granularity,
            beam_width=section.beam_width,
            kernel=section.kernel,
            division_beta=section.division_beta,
            power_beta=section.power_beta,
            max_edit_distance=section.max_edit_distance,
            search_mode=section.search_mode,
            raw_logits=section.raw_logits,
        )

    def with_(self, **changes: Any) -> "PipelineConfig":
        return replace(self, **changes)


@dataclass(frozen=True, eq=False)
class Diagnostics:
    """Everything reconstruct() computed on the way to its answer."""

    segment_map: SegmentMap
    table: PredictionTable
    trajectories: list[Trajectory]
    scored: list[Scored]
    word: str

    def to_json(self) -> dict[str, Any]:
        """Lattice document plus the per-trajectory corrections."""
        doc = lattice_to_json(self.table, self.trajectories, self.segment_map)
        doc["corrections"] = [
            {
                "word": s.word,
                "confidence": s.confidence,
                "corrected": r.corrected,
                "distance": r.distance,
                "frequency": r.frequency,
            }
            for s, r in self.scored
        ]
        doc["prediction"] = self.word
        return doc


def check_model(cfg: PipelineConfig, model: Model) -> None:
    if cfg.input_channels is not None and model.hparams.input_channels != cfg.input_channels:
        raise ConfigError(
            f"Model reads {model.hparams.input_channels} channels but the pipeline is set to {cfg.input_channels}"
        )


def predict_table(
    W: Sequence, cfg: PipelineConfig, model: Model, profile: CalibrationProfile | None = None
) -> tuple[SegmentMap, PredictionTable]:
    """Segment a word and classify every segment."""
    sm = segment(W, cfg.granularity)
    return sm, predict_segments(model, sm, profile, raw_logits=cfg.raw_logits)


def decode_table(
    table: PredictionTable, cfg: PipelineConfig, index: CorrectionIndex
) -> tuple[str, list[Trajectory], list[Scored]]:
    """Trajectory search and kernel selection over a prediction table."""
    trajectories = trajectory_search(table, K=cfg.beam_width, mode=cfg.search_mode)
    scored = score_trajectories(trajectories, index)
    word = apply_kernel(cfg.kernel, scored, cfg.division_beta, cfg.power_beta)
    return word, trajectories, scored


def reconstruct(
    W: Sequence,
    cfg: PipelineConfig,
    model: Model,
    index: CorrectionIndex,
    profile: CalibrationProfile | None = None,
) -> tuple[str, Diagnostics]:
    """
    Reconstruct the written word from a continuous recording.

    Args:
        W: Word recording (at least 2 frames)
        cfg: Granularity, beam width, kernel and betas
        model: Trained character classifier
        index: Correction index over the dictionary
        profile: Writer's calibration profile; without one every segment is
            only shifted by its first frame

    Returns:
        (lowercase corrected word, diagnostics)

    Raises:
        SequenceTooShortError: if W has fewer than 2 frames
        NoPathError: if no chain of classifiable segments spans W
    """
    check_model(cfg, model)
    sm, table = predict_table(W, cfg, model, profile)
    word, trajectories, scored = decode_table(table, cfg, index)
    logger.debug(
        "Reconstructed %r from %d frames: %d splits, top trajectory %r",
        word,
        len(W),
        sm.n_splits,
        trajectories[0].word,
    )
    return word, Diagnostics(sm, table, trajectories, scored, word)


def load_pipeline(cfg: PipelineConfig) -> tuple[Model, CorrectionIndex]:
    """Load the model file and build the correction index named by cfg."""
    if cfg.model_path is None:
        raise ConfigError("Pipeline config has no model path")
    model = load_model_file(Path(cfg.model_path))
    check_model(cfg, model)
    index = build_index(load_dictionary(cfg.dictionary), cfg.max_edit_distance)
    logger.info("Correction index holds %d delete variants", len(index))
    return model, index
