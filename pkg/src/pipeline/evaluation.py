"""Run the reconstruction pipeline over labelled word recordings."""

import logging
from collections.abc import Callable, Iterable, Mapping
from typing import TypeVar

from joblib import Parallel, delayed

from autocorrect import CorrectionIndex, Kernel, Scored, apply_kernel, score_trajectories
from classifier import Model
from decoder import Trajectory, trajectory_search
from errors import EmptyInputError, NoPathError
from seqcore import CalibrationProfile, Dataset, Sequence

from .metrics import Metrics, WordRecord
from .reconstruction import PipelineConfig, check_model, decode_table, predict_table

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

Profiles = Mapping[str, CalibrationProfile]


def parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """Order-preserving map, threaded when workers > 1."""
    if workers <= 1:
        return [fn(item) for item in items]
    results: list[R] = Parallel(n_jobs=workers, backend="threading")(delayed(fn)(item) for item in items)
    return results


def word_label(seq: Sequence) -> str:
    if not seq.word:
        raise EmptyInputError(f"Word recording of subject {seq.subject!r} has no label word")
    return seq.word.lower()


def _require_words(words: Dataset) -> None:
    if len(words) == 0:
        raise EmptyInputError("No word recordings to evaluate")


def word_record(seq: Sequence, prediction: str, trajectories: list[Trajectory]) -> WordRecord:
    return WordRecord(
        label=word_label(seq),
        prediction=prediction,
        subject=seq.subject,
        session=seq.session,
        top_trajectory=trajectories[0].word.lower() if trajectories else "",
        n_trajectories=len(trajectories),
    )


def _no_path(seq: Sequence, e: NoPathError) -> WordRecord:
    logger.warning("No trajectory for %r (subject %r): %s", seq.word, seq.subject, e)
    return word_record(seq, "", [])


def evaluate(
    words: Dataset,
    cfg: PipelineConfig,
    model: Model,
    index: CorrectionIndex,
    profiles: Profiles | None = None,
    workers: int = 1,
) -> Metrics:
    """
    Reconstruct every word recording and score it against its label.

    A recording without any spanning trajectory counts as an empty prediction.

    Args:
        words: Word recordings carrying their label word
        cfg: Pipeline settings
        model: Character classifier
        index: Correction index
        profiles: Calibration profile per subject
        workers: Threads to spread the recordings over

    Returns:
        Metrics with one record per recording, in dataset order
    """
    _require_words(words)
    check_model(cfg, model)
    found = profiles or {}

    def run(seq: Sequence) -> WordRecord:
        word_label(seq)
        try:
            _, table = predict_table(seq, cfg, model, found.get(seq.subject))
            prediction, trajectories, _ = decode_table(table, cfg, index)
        except NoPathError as e:
            return _no_path(seq, e)
        return word_record(seq, prediction, trajectories)

    metrics = Metrics.from_records(parallel_map(run, words, workers))
    logger.info(
        "Evaluated %d words: accuracy %.4f, mean edit distance %.4f",
        metrics.total,
        metrics.accuracy,
        metrics.mean_edit_distance,
    )
    return metrics


def compare_kernels(
    words: Dataset,
    cfg: PipelineConfig,
    model: Model,
    index: CorrectionIndex,
    profiles: Profiles | None = None,
    kernels: Iterable[Kernel | str] = tuple(Kernel),
    workers: int = 1,
) -> dict[str, Metrics]:
    """
    Evaluate several kernels on the same top-K trajectories.

    Each recording is classified and searched once; only the final selection
    differs between kernels.
    """
    _require_words(words)
    check_model(cfg, model)
    found = profiles or {}
    names = [Kernel(k).value for k in kernels]

    def run(seq: Sequence) -> tuple[list[Trajectory], list[Scored]] | None:
        word_label(seq)
        try:
            _, table = predict_table(seq, cfg, model, found.get(seq.subject))
            trajectories = trajectory_search(table, K=cfg.beam_width, mode=cfg.search_mode)
        except NoPathError as e:
            _no_path(seq, e)
            return None
        return trajectories, score_trajectories(trajectories, index)

    decoded = parallel_map(run, words, workers)
    results: dict[str, Metrics] = {}
    for name in names:
        records = []
        for seq, item in zip(words, decoded, strict=True):
            if item is None:
                records.append(word_record(seq, "", []))
                continue
            trajectories, scored = item
            prediction = apply_kernel(name, scored, cfg.division_beta, cfg.power_beta)
            records.append(word_record(seq, prediction, trajectories))
        results[name] = Metrics.from_records(records)
        logger.info("Kernel %s: accuracy %.4f", name, results[name].accuracy)
    return results
