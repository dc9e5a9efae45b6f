"""Integration tests for CLI commands."""

import json
from pathlib import Path
from typing import Any

import pytest
from click.testing import CliRunner, Result

from classifier import load_model_file, save_model_file
from main import cli
from tests.fixtures import constant_model

TINY_RUN = """
[classifier]
lstm_layers = 1
lstm_hidden = 4
ff_hidden = 4
resample_points = 8

[train]
max_epochs = 2
batch_size = 16
patience = 0
augment = false

[adapt]
max_epochs = 2
batch_size = 16
"""


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def _ok(result: Result) -> dict[str, Any]:
    """Assert success and parse the JSON printed on stdout."""
    assert result.exit_code == 0, result.stderr
    doc: dict[str, Any] = json.loads(result.stdout)
    return doc


def _word_file(manifest: Path, word: str) -> Path:
    for line in manifest.read_text().splitlines():
        record = json.loads(line)
        if record.get("word") == word:
            return manifest.parent / record["path"]
    raise AssertionError(f"No recording of {word!r} in {manifest}")


@pytest.fixture(scope="module")
def workspace(tmp_path_factory: pytest.TempPathFactory) -> Path:
    """Synthetic ID and OOD corpora, a run config, a dictionary and a constant-A model."""
    root = tmp_path_factory.mktemp("cli")
    (root / "words.txt").write_text("a\ni\ncat\n")
    (root / "dict.txt").write_text("a 1000\ni 500\ncat 800\n")
    (root / "run.toml").write_text(TINY_RUN)
    save_model_file(root / "a.inkm", constant_model("A", margin=1000.0))

    runner = CliRunner()
    for name, args in [("id", ["--subjects", "1"]), ("ood", ["--subjects", "0", "--ood-subjects", "1"])]:
        result = runner.invoke(
            cli,
            ["synth", *args, "--letters-per-class", "3", "--words", str(root / "words.txt"), "--out", str(root / name), "--seed", "0"],
        )
        assert result.exit_code == 0, result.stderr
    return root


def test_synth_reports_corpus(workspace: Path) -> None:
    manifest = workspace / "id" / "manifest.jsonl"
    assert manifest.exists()
    kinds = [json.loads(line)["kind"] for line in manifest.read_text().splitlines()]
    assert kinds.count("calibration") == 1
    assert kinds.count("letter") >= 26 * 3


def test_synth_is_deterministic(runner: CliRunner, workspace: Path, tmp_path: Path) -> None:
    result = runner.invoke(
        cli,
        ["synth", "--subjects", "1", "--letters-per-class", "3", "--words", str(workspace / "words.txt"), "--out", str(tmp_path / "again"), "--seed", "0"],
    )
    doc = _ok(result)
    assert doc["subjects"] == ["s01"]
    first = workspace / "id" / "manifest.jsonl"
    second = tmp_path / "again" / "manifest.jsonl"
    assert first.read_text() == second.read_text()
    assert _word_file(first, "cat").read_text() == _word_file(second, "cat").read_text()


def test_ingest(runner: CliRunner, workspace: Path) -> None:
    doc = _ok(runner.invoke(cli, ["ingest", "--manifest", str(workspace / "id" / "manifest.jsonl")]))
    assert doc["letters"]["count"] == sum(doc["letters"]["labels"].values())
    assert doc["letters"]["labels"]["Q"] == 3
    assert doc["letters"]["subjects"] == {"s01": doc["letters"]["count"]}
    assert doc["calibration"] == ["s01"]
    assert doc["words"]["count"] >= 3


def test_ingest_rejects_broken_manifest(runner: CliRunner, tmp_path: Path) -> None:
    manifest = tmp_path / "manifest.jsonl"
    manifest.write_text('{"path": "a.csv", "label": "A"}\n')
    result = runner.invoke(cli, ["ingest", "--manifest", str(manifest)])
    assert result.exit_code == 1
    assert "Error:" in result.stderr
    assert "manifest line 1" in result.stderr


def test_augment_preview(runner: CliRunner, workspace: Path, tmp_path: Path) -> None:
    result = runner.invoke(
        cli,
        ["augment", "--manifest", str(workspace / "id" / "manifest.jsonl"), "--preview", "5", "--out", str(tmp_path / "aug"), "--seed", "3"],
    )
    doc = _ok(result)
    assert doc["samples"] == 5
    assert sum(doc["labels"].values()) == 5
    assert Path(doc["manifest"]).exists()


def test_train_writes_model_and_metrics(runner: CliRunner, workspace: Path, tmp_path: Path) -> None:
    args = [
        "train",
        "--config", str(workspace / "run.toml"),
        "--manifest", str(workspace / "id" / "manifest.jsonl"),
        "--out", str(tmp_path / "m.inkm"),
        "--metrics", str(tmp_path / "epochs.jsonl"),
    ]  # fmt: skip
    doc = _ok(runner.invoke(cli, args))

    assert doc["epochs"] == 2
    assert doc["hparams"]["lstm_hidden"] == 4
    assert 0.0 <= doc["best_dev_acc"] <= 1.0
    assert len((tmp_path / "epochs.jsonl").read_text().splitlines()) == 2
    model = load_model_file(tmp_path / "m.inkm")
    assert model.hparams.resample_points == 8

    again = args[:-4] + ["--out", str(tmp_path / "m2.inkm")]
    _ok(runner.invoke(cli, again))
    assert (tmp_path / "m.inkm").read_bytes() == (tmp_path / "m2.inkm").read_bytes()


def test_train_needs_a_manifest(runner: CliRunner, workspace: Path) -> None:
    result = runner.invoke(cli, ["train", "--config", str(workspace / "run.toml")])
    assert result.exit_code == 1
    assert "No manifest" in result.stderr


def test_train_rejects_unknown_config_key(runner: CliRunner, tmp_path: Path, workspace: Path) -> None:
    bad = tmp_path / "bad.toml"
    bad.write_text("[train]\nepochs = 3\n")
    result = runner.invoke(cli, ["train", "--config", str(bad), "--manifest", str(workspace / "id" / "manifest.jsonl")])
    assert result.exit_code == 1
    assert "Unknown key" in result.stderr


@pytest.mark.slow
def test_search_leaderboard(runner: CliRunner, workspace: Path, tmp_path: Path) -> None:
    args = [
        "search",
        "--budget", "2",
        "--config", str(workspace / "run.toml"),
        "--manifest", str(workspace / "id" / "manifest.jsonl"),
        "--leaderboard", str(tmp_path / "board.jsonl"),
    ]  # fmt: skip
    doc = _ok(runner.invoke(cli, args))
    assert len(doc["leaderboard"]) == 2
    assert len((tmp_path / "board.jsonl").read_text().splitlines()) == 2
    assert 1 <= doc["best"]["lstm_layers"] <= 8


def test_reconstruct(runner: CliRunner, workspace: Path, tmp_path: Path) -> None:
    lattice = tmp_path / "lattice.json"
    args = [
        "reconstruct",
        "--model", str(workspace / "a.inkm"),
        "--word", str(_word_file(workspace / "id" / "manifest.jsonl", "a")),
        "--dict", str(workspace / "dict.txt"),
        "-G", "3",
        "-K", "5",
        "--dump-lattice", str(lattice),
    ]  # fmt: skip
    doc = _ok(runner.invoke(cli, args))

    assert doc["prediction"] == "a"
    assert doc["trajectories"][0]["word"] == "A"
    assert len(doc["trajectories"]) <= 5
    assert (doc["granularity"], doc["beam_width"], doc["kernel"]) == (3, 5, "division")
    dumped = json.loads(lattice.read_text())
    assert dumped["granularity"] == 3
    assert dumped["prediction"] == "a"


def test_reconstruct_rejects_bad_pipeline_config(runner: CliRunner, workspace: Path, tmp_path: Path) -> None:
    run = tmp_path / "bad.toml"
    run.write_text("[pipeline]\ngranularity = 0\n")
    result = runner.invoke(
        cli,
        ["reconstruct", "--model", str(workspace / "a.inkm"), "--word", str(_word_file(workspace / "id" / "manifest.jsonl", "a")), "--config", str(run)],
    )
    assert result.exit_code == 1
    assert "Granularity" in result.stderr


def test_evaluate(runner: CliRunner, workspace: Path, tmp_path: Path) -> None:
    records = tmp_path / "records.jsonl"
    args = [
        "evaluate",
        "--model", str(workspace / "a.inkm"),
        "--manifest", str(workspace / "id" / "manifest.jsonl"),
        "--dict", str(workspace / "dict.txt"),
        "-G", "3",
        "-K", "5",
        "--records", str(records),
        "--workers", "2",
    ]  # fmt: skip
    doc = _ok(runner.invoke(cli, args))

    lines = [json.loads(line) for line in records.read_text().splitlines()]
    assert doc["total"] == len(lines)
    assert all(r["prediction"] == "a" for r in lines)
    n_a = sum(r["label"] == "a" for r in lines)
    assert doc["accuracy"] == pytest.approx(n_a / len(lines))
    assert set(doc["subjects"]) == {"s01"}


def test_evaluate_compares_kernels(runner: CliRunner, workspace: Path) -> None:
    args = [
        "evaluate",
        "--model", str(workspace / "a.inkm"),
        "--manifest", str(workspace / "ood" / "manifest.jsonl"),
        "--dict", str(workspace / "dict.txt"),
        "-G", "3",
        "-K", "5",
        "--compare-kernels",
        "--ood-subject", "ood1",
    ]  # fmt: skip
    result = runner.invoke(cli, args)
    doc = _ok(result)
    assert list(doc) == sorted(["top1", "maxvote", "sumconf", "division", "power"])
    assert "in_domain" not in doc["top1"]
    assert "ood1 (OOD)" in result.stderr


def test_grid(runner: CliRunner, workspace: Path) -> None:
    args = [
        "grid",
        "--model", str(workspace / "a.inkm"),
        "--manifest", str(workspace / "ood" / "manifest.jsonl"),
        "--dict", str(workspace / "dict.txt"),
        "--kernel", "top1",
    ]  # fmt: skip
    result = runner.invoke(cli, args)
    doc = _ok(result)
    assert len(doc["cells"]) == 28
    assert (doc["best"]["granularity"], doc["best"]["beam_width"]) == (3, 5)
    assert "Best: G=3 K=5" in result.stderr


def test_correct(runner: CliRunner) -> None:
    doc = _ok(runner.invoke(cli, ["correct", "--kernel", "top1", "teh:0.9", "tje:0.1"]))
    assert doc["prediction"] == "the"
    assert doc["lookups"][0] == {"word": "teh", "confidence": 0.9, "corrected": "the", "distance": 1, "frequency": 23135851162}


def test_correct_rejects_bad_confidence(runner: CliRunner) -> None:
    result = runner.invoke(cli, ["correct", "cat:lots"])
    assert result.exit_code == 1
    assert "not a number" in result.stderr


def test_adapt(runner: CliRunner, workspace: Path, tmp_path: Path) -> None:
    history = tmp_path / "adapt.jsonl"
    args = [
        "adapt",
        "--base", str(workspace / "a.inkm"),
        "--id", str(workspace / "id" / "manifest.jsonl"),
        "--ood", str(workspace / "ood" / "manifest.jsonl"),
        "--config", str(workspace / "run.toml"),
        "--out", str(tmp_path / "adapted.inkm"),
        "--history", str(history),
    ]  # fmt: skip
    doc = _ok(runner.invoke(cli, args))

    assert doc["epochs"] == 2
    records = [json.loads(line) for line in history.read_text().splitlines()]
    assert [r["epoch"] for r in records] == [1, 2]
    assert 0.0 <= records[0]["lambda"] < records[1]["lambda"] < 1.0
    assert load_model_file(tmp_path / "adapted.inkm").hparams == constant_model("A").hparams


@pytest.mark.slow
def test_adapt_report(runner: CliRunner, workspace: Path) -> None:
    args = [
        "adapt",
        "--base", str(workspace / "a.inkm"),
        "--id", str(workspace / "id" / "manifest.jsonl"),
        "--ood", str(workspace / "ood" / "manifest.jsonl"),
        "--config", str(workspace / "run.toml"),
        "--report",
    ]  # fmt: skip
    result = runner.invoke(cli, args)
    doc = _ok(result)
    print(result.stderr)
    assert [r["setting"] for r in doc["rows"]] == ["Original", "Fine-Tuning", "Domain Adaptation"]
    assert doc["rows"][0]["train_acc"] is None
    assert all(0.0 <= r["test_acc"] <= 1.0 for r in doc["rows"])
    assert "Domain Adaptation" in result.stderr
