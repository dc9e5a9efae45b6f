#!/usr/bin/env python3
"""Command-line interface for word reconstruction from stylus motion.

Every command is deterministic under its seed and prints its result as JSON
with sorted keys; progress goes to the log on stderr.
"""

import json
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any

import click

import config
from augment import AugmentConfig, preview
from autocorrect import Kernel, ScoredWord, apply_kernel, build_index, load_dictionary
from classifier import (
    EpochRecord,
    HparamRanges,
    Hparams,
    TrainOpts,
    evaluate_split,
    featurize_dataset,
    init_model,
    load_model_file,
    random_search,
    save_model_file,
    train,
)
from domainadapt import AdaptOpts, AdaptRecord, adapt, transfer_study
from errors import ConfigError
from pipeline import (
    PipelineConfig,
    compare_kernels,
    evaluate,
    format_grid_table,
    format_kernel_table,
    format_metrics_table,
    grid_search,
    grid_to_json,
    kernels_to_json,
    load_pipeline,
    metrics_to_json,
    reconstruct,
    records_to_jsonl,
)
from seqcore import Dataset, calibration_mean, load_corpus, read_frames_file, save_dataset, split_dataset
from synthglyph import DEFAULT_WORDS, default_profiles, gen_corpus, ood_profile, read_word_list, write_corpus

KERNELS = [k.value for k in Kernel]


def setup_logging(verbose: int) -> None:
    """-v for INFO, -vv or INKLINE_DEBUG=1 for DEBUG; WARNING otherwise."""
    if verbose >= 2 or os.getenv("INKLINE_DEBUG", "0") == "1":
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr, force=True)


def echo_json(doc: Any) -> None:
    click.echo(json.dumps(doc, sort_keys=True, indent=2))


def write_jsonl(path: Path, docs: list[dict[str, Any]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(json.dumps(d, sort_keys=True) + "\n" for d in docs))


def load_config(path: str | None, preset: str | None) -> config.RunConfig:
    if path is not None:
        return config.load_run_config(path, preset)
    if preset is not None:
        if preset not in config.PRESETS:
            raise ConfigError(f"Unknown preset '{preset}'. Available: {sorted(config.PRESETS)}")
        return config.PRESETS[preset]
    return config.RunConfig()


def manifest_path(option: str | None, run: config.RunConfig) -> str:
    path = option or run.data.manifest
    if path is None:
        raise ConfigError("No manifest given (use --manifest or [data] manifest)")
    return path


def pipeline_config(
    run: config.RunConfig,
    model: str,
    dictionary: str | None,
    granularity: int | None,
    beam_width: int | None,
    kernel: str | None,
) -> PipelineConfig:
    cfg = PipelineConfig.from_section(run.pipeline, model_path=model)
    changes: dict[str, Any] = {}
    if dictionary is not None:
        changes["dictionary"] = dictionary
    if granularity is not None:
        changes["granularity"] = granularity
    if beam_width is not None:
        changes["beam_width"] = beam_width
    if kernel is not None:
        changes["kernel"] = kernel
    return cfg.with_(**changes)


config_option = click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="Run config (TOML)")
preset_option = click.option("--preset", type=click.Choice(sorted(config.PRESETS)), help="Start from a preset")


@click.group()
@click.option("-v", "--verbose", count=True, help="More log output (-vv for debug)")
@click.pass_context
def cli(ctx: click.Context, verbose: int) -> None:
    """Reconstruct written words from continuous stylus motion recordings."""
    ctx.ensure_object(dict)
    setup_logging(verbose)


@cli.command()
@click.option("--manifest", required=True, type=click.Path(exists=True, dir_okay=False), help="Dataset manifest (JSON lines)")
def ingest(manifest: str) -> None:
    """Validate a dataset manifest and report what it holds."""
    try:
        corpus = load_corpus(manifest)
        click.echo(f"✓ {len(corpus.letters)} letters, {len(corpus.words)} words", err=True)
        echo_json(
            {
                "letters": {
                    "count": len(corpus.letters),
                    "labels": corpus.letters.label_counts(),
                    "subjects": corpus.letters.subject_counts(),
                },
                "words": {"count": len(corpus.words), "subjects": corpus.words.subject_counts()},
                "calibration": sorted(corpus.profiles),
            }
        )
    except Exception as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)


@cli.command()
@click.option("--subjects", type=int, default=config.SYNTH_SUBJECTS, help="In-domain writers")
@click.option("--ood-subjects", type=int, default=0, help="Held-out writers (tilted, noisier)")
@click.option("--letters-per-class", type=int, default=config.SYNTH_LETTERS_PER_CLASS, help="Recordings per letter and writer")
@click.option("--words", "words_file", type=click.Path(exists=True, dir_okay=False), help="Word list, one per line")
@click.option("--out", required=True, type=click.Path(file_okay=False), help="Output directory")
@click.option("--seed", type=int, default=config.SEED, help="Random seed")
def synth(subjects: int, ood_subjects: int, letters_per_class: int, words_file: str | None, out: str, seed: int) -> None:
    """Generate a synthetic corpus in the manifest layout."""
    try:
        words = read_word_list(words_file) if words_file else list(DEFAULT_WORDS)
        profiles = default_profiles(subjects, seed)
        profiles += [ood_profile(f"ood{i + 1}", seed=100 + i) for i in range(ood_subjects)]
        corpus = gen_corpus(letters_per_class, words, profiles, seed)
        path = write_corpus(out, corpus)
        click.echo(f"✓ Corpus written to {path}", err=True)
        echo_json(
            {
                "manifest": str(path),
                "letters": len(corpus.letters),
                "words": len(corpus.words),
                "subjects": [p.name for p in profiles],
            }
        )
    except Exception as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)


@cli.command("augment")
@click.option("--manifest", required=True, type=click.Path(exists=True, dir_okay=False), help="Dataset manifest")
@click.option("--preview", "k", type=int, default=10, help="Number of augmented samples to keep")
@click.option("--out", required=True, type=click.Path(file_okay=False), help="Output directory")
@click.option("--seed", type=int, default=config.SEED, help="Random seed")
@config_option
def augment_cmd(manifest: str, k: int, out: str, seed: int, config_path: str | None) -> None:
    """Write a preview of one augmented training epoch."""
    try:
        run = load_config(config_path, None)
        corpus = load_corpus(manifest)
        samples = preview(corpus.letters, corpus.profiles, AugmentConfig.from_section(run.augment), k, seed)
        path = save_dataset(out, Dataset(tuple(samples)))
        click.echo(f"✓ {len(samples)} augmented samples written to {path}", err=True)
        echo_json({"manifest": str(path), "samples": len(samples), "labels": Dataset(tuple(samples)).label_counts()})
    except Exception as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)


@cli.command("train")
@config_option
@preset_option
@click.option("--manifest", type=click.Path(exists=True, dir_okay=False), help="Dataset manifest (overrides [data])")
@click.option("--out", type=click.Path(dir_okay=False), default="model.inkm", help="Model output path")
@click.option("--metrics", type=click.Path(dir_okay=False), help="Per-epoch metrics (JSON lines)")
def train_cmd(config_path: str | None, preset: str | None, manifest: str | None, out: str, metrics: str | None) -> None:
    """Train the character classifier."""
    try:
        run = load_config(config_path, preset)
        corpus = load_corpus(manifest_path(manifest, run))
        train_set, dev_set, test_set = split_dataset(corpus.letters, run.data.split_ratio, run.data.seed)
        h = Hparams.from_section(run.classifier)
        opts = TrainOpts.from_section(run.train)
        aug = AugmentConfig.from_section(run.augment) if run.train.augment else None

        def report(r: EpochRecord) -> None:
            click.echo(f"📊 epoch {r.epoch}: loss {r.train_loss:.4f}, dev acc {r.dev_acc:.4f}", err=True)

        model, history = train(init_model(h, opts.seed), train_set, dev_set, opts, aug, corpus.profiles, on_epoch=report)
        save_model_file(out, model)
        if metrics:
            write_jsonl(Path(metrics), [r.to_json() for r in history])
        test_acc = None
        if len(test_set):
            _, test_acc = evaluate_split(model, *featurize_dataset(test_set, corpus.profiles, h))
        click.echo(f"✓ Model saved to {out}", err=True)
        echo_json(
            {
                "model": out,
                "epochs": len(history),
                "best_dev_acc": max(r.dev_acc for r in history),
                "test_acc": test_acc,
                "hparams": h.to_dict(),
            }
        )
    except Exception as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)


@cli.command()
@click.option("--budget", type=int, required=True, help="Number of hyperparameter draws")
@config_option
@preset_option
@click.option("--manifest", type=click.Path(exists=True, dir_okay=False), help="Dataset manifest (overrides [data])")
@click.option("--out", type=click.Path(dir_okay=False), help="Save the best model here")
@click.option("--leaderboard", type=click.Path(dir_okay=False), help="Every draw's result (JSON lines)")
def search(
    budget: int, config_path: str | None, preset: str | None, manifest: str | None, out: str | None, leaderboard: str | None
) -> None:
    """Random hyperparameter search ranked by dev accuracy."""
    try:
        run = load_config(config_path, preset)
        corpus = load_corpus(manifest_path(manifest, run))
        train_set, dev_set, _ = split_dataset(corpus.letters, run.data.split_ratio, run.data.seed)
        opts = TrainOpts.from_section(run.train)
        aug = AugmentConfig.from_section(run.augment) if run.train.augment else None
        best, entries, model = random_search(
            HparamRanges(),
            budget,
            train_set,
            dev_set,
            opts,
            opts.seed,
            aug,
            corpus.profiles,
            base=Hparams.from_section(run.classifier),
        )
        if out:
            save_model_file(out, model)
        if leaderboard:
            write_jsonl(Path(leaderboard), [e.to_json() for e in entries])
        click.echo(f"✓ Best of {budget} draws: {best.lstm_layers}x{best.lstm_hidden} LSTM, {best.ff_hidden} FF", err=True)
        echo_json({"best": best.to_dict(), "leaderboard": [e.to_json() for e in entries]})
    except Exception as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)


@cli.command("adapt")
@click.option("--base", required=True, type=click.Path(exists=True, dir_okay=False), help="Pretrained model")
@click.option("--id", "id_manifest", required=True, type=click.Path(exists=True, dir_okay=False), help="In-domain manifest")
@click.option("--ood", "ood_manifest", required=True, type=click.Path(exists=True, dir_okay=False), help="Out-of-domain manifest")
@click.option("--schedule", type=click.Choice(["progress", "raw-epoch"]), help="Lambda schedule")
@click.option("--out", type=click.Path(dir_okay=False), default="adapted.inkm", help="Adapted model output path")
@click.option("--history", type=click.Path(dir_okay=False), help="Per-epoch metrics (JSON lines)")
@click.option("--report", is_flag=True, help="Run the original / fine-tuning / adaptation comparison")
@config_option
@preset_option
def adapt_cmd(
    base: str,
    id_manifest: str,
    ood_manifest: str,
    schedule: str | None,
    out: str,
    history: str | None,
    report: bool,
    config_path: str | None,
    preset: str | None,
) -> None:
    """Adapt a classifier to an out-of-domain writer."""
    try:
        run = load_config(config_path, preset)
        opts = AdaptOpts.from_section(run.adapt)
        if schedule is not None:
            opts = replace(opts, schedule=schedule)
        model = load_model_file(base)
        id_corpus = load_corpus(id_manifest)
        ood_corpus = load_corpus(ood_manifest)
        profiles = {**id_corpus.profiles, **ood_corpus.profiles}

        if report:
            result = transfer_study(model, id_corpus.letters, ood_corpus.letters, opts, profiles, run.data.split_ratio)
            if history:
                write_jsonl(Path(history), [r.to_json() for r in result.adapt_history])
            click.echo(result.format_table(), err=True)
            echo_json(result.to_json())
            return

        id_train, id_dev, _ = split_dataset(id_corpus.letters, run.data.split_ratio, opts.seed)
        ood_train, ood_dev, _ = split_dataset(ood_corpus.letters, run.data.split_ratio, opts.seed)

        def progress(r: AdaptRecord) -> None:
            click.echo(f"📊 epoch {r.epoch}: lambda {r.lam:.4f}, loss {r.loss:.4f}, OOD dev acc {r.ood_dev_acc}", err=True)

        dm, records = adapt(model, id_train, ood_train, opts, profiles, id_dev, ood_dev, on_epoch=progress)
        save_model_file(out, dm.base)
        if history:
            write_jsonl(Path(history), [r.to_json() for r in records])
        click.echo(f"✓ Adapted model saved to {out}", err=True)
        echo_json({"model": out, "epochs": len(records), "final": records[-1].to_json()})
    except Exception as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)


@cli.command("reconstruct")
@click.option("--model", required=True, type=click.Path(exists=True, dir_okay=False), help="Classifier model")
@click.option("--word", "word_file", required=True, type=click.Path(exists=True, dir_okay=False), help="Word recording (frame CSV)")
@click.option("-G", "--granularity", type=int, help="Splits per expected letter")
@click.option("-K", "--beam-width", type=int, help="Trajectories kept per split point")
@click.option("--dict", "dictionary", type=click.Path(exists=True, dir_okay=False), help="Frequency dictionary")
@click.option("--kernel", type=click.Choice(KERNELS), help="Final-word selection")
@click.option("--calibration", type=click.Path(exists=True, dir_okay=False), help="Still-hold recording of the writer")
@click.option("--dump-lattice", type=click.Path(dir_okay=False), help="Write the segment lattice here (JSON)")
@config_option
def reconstruct_cmd(
    model: str,
    word_file: str,
    granularity: int | None,
    beam_width: int | None,
    dictionary: str | None,
    kernel: str | None,
    calibration: str | None,
    dump_lattice: str | None,
    config_path: str | None,
) -> None:
    """Reconstruct the word written in one recording."""
    try:
        run = load_config(config_path, None)
        cfg = pipeline_config(run, model, dictionary, granularity, beam_width, kernel)
        classifier_model, index = load_pipeline(cfg)
        profile = calibration_mean(read_frames_file(calibration)) if calibration else None
        word, diag = reconstruct(read_frames_file(word_file), cfg, classifier_model, index, profile)
        if dump_lattice:
            Path(dump_lattice).parent.mkdir(parents=True, exist_ok=True)
            Path(dump_lattice).write_text(json.dumps(diag.to_json(), sort_keys=True, indent=2))
        click.echo(f"✓ {word}", err=True)
        echo_json(
            {
                "prediction": word,
                "trajectories": [{"word": t.word, "mean_score": t.mean_score} for t in diag.trajectories],
                "granularity": cfg.granularity,
                "beam_width": cfg.beam_width,
                "kernel": cfg.kernel,
            }
        )
    except Exception as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)


@cli.command("evaluate")
@click.option("--model", required=True, type=click.Path(exists=True, dir_okay=False), help="Classifier model")
@click.option("--manifest", required=True, type=click.Path(exists=True, dir_okay=False), help="Manifest with word recordings")
@click.option("--dict", "dictionary", type=click.Path(exists=True, dir_okay=False), help="Frequency dictionary")
@click.option("--kernel", type=click.Choice(KERNELS), help="Final-word selection")
@click.option("-G", "--granularity", type=int, help="Splits per expected letter")
@click.option("-K", "--beam-width", type=int, help="Trajectories kept per split point")
@click.option("--compare-kernels", "all_kernels", is_flag=True, help="Score all five kernels on the same trajectories")
@click.option("--ood-subject", "ood_subjects", multiple=True, help="Subject to report as out-of-domain")
@click.option("--records", type=click.Path(dir_okay=False), help="Per-word results (JSON lines)")
@click.option("--workers", type=int, default=1, help="Threads")
@config_option
def evaluate_cmd(
    model: str,
    manifest: str,
    dictionary: str | None,
    kernel: str | None,
    granularity: int | None,
    beam_width: int | None,
    all_kernels: bool,
    ood_subjects: tuple[str, ...],
    records: str | None,
    workers: int,
    config_path: str | None,
) -> None:
    """Word accuracy and mean edit distance over a set of word recordings."""
    try:
        run = load_config(config_path, None)
        cfg = pipeline_config(run, model, dictionary, granularity, beam_width, kernel)
        classifier_model, index = load_pipeline(cfg)
        corpus = load_corpus(manifest)
        if all_kernels:
            results = compare_kernels(corpus.words, cfg, classifier_model, index, corpus.profiles, workers=workers)
            if records:
                Path(records).write_text(records_to_jsonl(results[cfg.kernel].records))
            click.echo(format_kernel_table(results, ood_subjects), err=True)
            echo_json(kernels_to_json(results, ood_subjects))
            return
        metrics = evaluate(corpus.words, cfg, classifier_model, index, corpus.profiles, workers=workers)
        if records:
            Path(records).write_text(records_to_jsonl(metrics.records))
        click.echo(format_metrics_table(metrics), err=True)
        echo_json(metrics_to_json(metrics))
    except Exception as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)


@cli.command("grid")
@click.option("--model", required=True, type=click.Path(exists=True, dir_okay=False), help="Classifier model")
@click.option("--manifest", required=True, type=click.Path(exists=True, dir_okay=False), help="Manifest with word recordings")
@click.option("--dict", "dictionary", type=click.Path(exists=True, dir_okay=False), help="Frequency dictionary")
@click.option("--kernel", type=click.Choice(KERNELS), help="Final-word selection")
@click.option("--workers", type=int, default=1, help="Threads")
@config_option
def grid_cmd(
    model: str, manifest: str, dictionary: str | None, kernel: str | None, workers: int, config_path: str | None
) -> None:
    """Evaluate every granularity (3-9) and beam width (5, 10, 15, 20)."""
    try:
        run = load_config(config_path, None)
        cfg = pipeline_config(run, model, dictionary, None, None, kernel)
        classifier_model, index = load_pipeline(cfg)
        corpus = load_corpus(manifest)
        result = grid_search(corpus.words, cfg, classifier_model, index, corpus.profiles, workers=workers)
        click.echo(format_grid_table(result), err=True)
        echo_json(grid_to_json(result))
    except Exception as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)


def parse_candidate(text: str) -> ScoredWord:
    """'word' or 'word:confidence' (confidence defaults to 1)."""
    word, _, conf = text.partition(":")
    if not word:
        raise click.BadParameter(f"Empty candidate word in {text!r}")
    try:
        confidence = float(conf) if conf else 1.0
    except ValueError:
        raise click.BadParameter(f"Confidence is not a number in {text!r}") from None
    return ScoredWord(word.lower(), confidence)


@cli.command("correct")
@click.option("--dict", "dictionary", type=click.Path(exists=True, dir_okay=False), default=str(config.DICTIONARY_PATH), help="Frequency dictionary")
@click.option("--kernel", type=click.Choice(KERNELS), default=config.DEFAULT_KERNEL, help="Final-word selection")
@click.option("--beta", type=float, help="Beta of the division or power kernel")
@click.option("--max-distance", type=int, default=config.MAX_EDIT_DISTANCE, help="Largest correction edit distance")
@click.argument("candidates", nargs=-1, required=True)
def correct(dictionary: str, kernel: str, beta: float | None, max_distance: int, candidates: tuple[str, ...]) -> None:
    """Correct ranked candidate words and pick one with a kernel."""
    try:
        index = build_index(load_dictionary(dictionary), max_distance)
        scored = [parse_candidate(c) for c in candidates]
        results = [(s, index.lookup(s.word)) for s in scored]
        division_beta = beta if beta is not None and kernel == Kernel.DIVISION else config.DIVISION_BETA
        power_beta = beta if beta is not None and kernel == Kernel.POWER else config.POWER_BETA
        word = apply_kernel(kernel, results, division_beta, power_beta)
        click.echo(f"✓ {word}", err=True)
        echo_json(
            {
                "prediction": word,
                "kernel": kernel,
                "lookups": [
                    {
                        "word": s.word,
                        "confidence": s.confidence,
                        "corrected": r.corrected,
                        "distance": r.distance,
                        "frequency": r.frequency,
                    }
                    for s, r in results
                ],
            }
        )
    except Exception as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    cli()
