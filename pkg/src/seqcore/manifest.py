"""
On-disk dataset format.

A dataset is a directory of frame CSV files plus a JSON-lines manifest. Each
manifest line describes one recording:

    {"path": "s1/A_000.csv", "kind": "letter", "label": "A", "subject": "s1", "session": "1"}

``kind`` is one of ``letter`` (requires ``label``), ``word`` (requires ``word``)
or ``calibration`` (a still-hold recording for ``subject``). Paths are relative
to the manifest's directory.
"""

import json
import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from errors import FrameParseError, ManifestError

from .calibration import calibration_mean
from .frames_io import read_frames_file, write_frames_file
from .sequence import CLASSES, CalibrationProfile, Dataset, Sequence

logger = logging.getLogger(__name__)

KINDS = ("letter", "word", "calibration")


@dataclass(frozen=True)
class ManifestEntry:
    """One manifest line."""

    line: int
    path: Path
    kind: str
    subject: str
    session: str = ""
    label: str | None = None
    word: str | None = None

    def to_json(self, base: Path) -> dict[str, Any]:
        """Manifest record with the path relative to base."""
        record: dict[str, Any] = {
            "path": self.path.relative_to(base).as_posix(),
            "kind": self.kind,
            "subject": self.subject,
            "session": self.session,
        }
        if self.label is not None:
            record["label"] = self.label
        if self.word is not None:
            record["word"] = self.word
        return record


@dataclass(frozen=True)
class Corpus:
    """Letters, words and calibration profiles loaded from one manifest."""

    letters: Dataset
    words: Dataset
    profiles: dict[str, CalibrationProfile]


def _entry(record: Any, line: int, base: Path) -> ManifestEntry:
    if not isinstance(record, dict):
        raise ManifestError(line, "entry must be a JSON object")
    unknown = sorted(set(record) - {"path", "kind", "label", "word", "subject", "session"})
    if unknown:
        raise ManifestError(line, f"unknown field(s): {', '.join(unknown)}")
    if not isinstance(record.get("path"), str) or not record["path"]:
        raise ManifestError(line, "missing 'path'")
    if not isinstance(record.get("subject"), str) or not record["subject"]:
        raise ManifestError(line, "missing 'subject'")

    label = record.get("label")
    word = record.get("word")
    kind = record.get("kind") or ("word" if word else "letter")
    if kind not in KINDS:
        raise ManifestError(line, f"unknown kind {kind!r} (expected one of {', '.join(KINDS)})")
    if kind == "letter":
        if label not in CLASSES:
            raise ManifestError(line, f"letter entry needs a label in A-Z or NONCLASS, got {label!r}")
    elif label is not None:
        raise ManifestError(line, f"{kind} entry must not carry a label")
    if kind == "word" and (not isinstance(word, str) or not word.isalpha()):
        raise ManifestError(line, f"word entry needs an alphabetic 'word', got {word!r}")

    return ManifestEntry(
        line=line,
        path=base / record["path"],
        kind=kind,
        subject=record["subject"],
        session=str(record.get("session", "")),
        label=label,
        word=word.lower() if kind == "word" else None,
    )


def load_manifest(path: str | Path) -> list[ManifestEntry]:
    """Parse and validate a manifest without reading any frame file."""
    manifest = Path(path)
    base = manifest.parent
    entries = []
    with manifest.open() as fh:
        for line_no, raw in enumerate(fh, start=1):
            if not raw.strip():
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as e:
                raise ManifestError(line_no, f"invalid JSON: {e.msg}") from e
            entries.append(_entry(record, line_no, base))
    return entries


def _read_entry(entry: ManifestEntry) -> Sequence:
    try:
        seq = read_frames_file(entry.path)
    except FileNotFoundError:
        raise ManifestError(entry.line, f"file not found: {entry.path}") from None
    except FrameParseError as e:
        raise ManifestError(entry.line, f"{entry.path}: {e}") from e
    return seq.with_data(
        seq.data, label=entry.label, subject=entry.subject, session=entry.session, word=entry.word
    )


def load_dataset(path: str | Path, kinds: Iterable[str] = ("letter", "word")) -> Dataset:
    """Load every entry of the given kinds, in manifest order."""
    wanted = set(kinds)
    return Dataset(tuple(_read_entry(e) for e in load_manifest(path) if e.kind in wanted))


def load_corpus(path: str | Path) -> Corpus:
    """Load letters, words and per-subject calibration profiles from one manifest."""
    letters, words = [], []
    profiles: dict[str, CalibrationProfile] = {}
    for entry in load_manifest(path):
        seq = _read_entry(entry)
        if entry.kind == "letter":
            letters.append(seq)
        elif entry.kind == "word":
            words.append(seq)
        else:
            if entry.subject in profiles:
                logger.warning("Subject %r has several calibration recordings; keeping the last", entry.subject)
            profiles[entry.subject] = calibration_mean(seq)
    logger.info(
        "Loaded %d letter, %d word and %d calibration recordings from %s",
        len(letters),
        len(words),
        len(profiles),
        path,
    )
    return Corpus(Dataset(tuple(letters)), Dataset(tuple(words)), profiles)


def save_dataset(
    out_dir: str | Path,
    letters: Dataset,
    words: Dataset | None = None,
    profiles: Mapping[str, CalibrationProfile] | None = None,
    manifest_name: str = "manifest.jsonl",
) -> Path:
    """
    Write frame CSVs and a manifest under out_dir.

    Files are laid out as ``<subject>/<kind>_<label-or-word>_<index>.csv``.
    Profiles without source frames are skipped.

    Returns:
        Path of the written manifest
    """
    base = Path(out_dir)
    base.mkdir(parents=True, exist_ok=True)
    entries: list[tuple[ManifestEntry, Sequence]] = []

    def add(seq: Sequence, kind: str, tag: str, index: int) -> None:
        rel = Path(seq.subject or "unknown") / f"{kind}_{tag}_{index:04d}.csv"
        entries.append(
            (
                ManifestEntry(
                    line=len(entries) + 1,
                    path=base / rel,
                    kind=kind,
                    subject=seq.subject,
                    session=seq.session,
                    label=seq.label if kind == "letter" else None,
                    word=seq.word if kind == "word" else None,
                ),
                seq,
            )
        )

    for i, seq in enumerate(letters):
        add(seq, "letter", seq.label or "X", i)
    for i, seq in enumerate(words or ()):
        add(seq, "word", seq.word or "x", i)
    for subject, profile in sorted((profiles or {}).items()):
        if profile.source_frames is None:
            continue
        add(profile.source_frames.with_data(profile.source_frames.data, subject=subject), "calibration", "still", 0)

    manifest = base / manifest_name
    with manifest.open("w") as fh:
        for entry, seq in entries:
            write_frames_file(entry.path, seq)
            fh.write(json.dumps(entry.to_json(base), sort_keys=True) + "\n")
    return manifest
