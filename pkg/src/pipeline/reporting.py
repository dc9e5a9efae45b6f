"""JSON documents and aligned text tables for evaluation results."""

import json
from collections.abc import Collection, Iterable, Mapping
from typing import Any

from .grid import GridCell, GridResult
from .metrics import Metrics, WordRecord, weighted_average

KERNEL_TITLES = {
    "top1": "Top-1",
    "maxvote": "MaxVote",
    "sumconf": "SumConf",
    "division": "D.C.",
    "power": "P.C.",
}


def _summary(m: Metrics) -> dict[str, Any]:
    return {"accuracy": m.accuracy, "mean_edit_distance": m.mean_edit_distance, "total": m.total}


def metrics_to_json(m: Metrics, by_subject: bool = True) -> dict[str, Any]:
    """Overall summary, optionally with one summary per subject."""
    doc = _summary(m)
    if by_subject:
        doc["subjects"] = {s: _summary(sm) for s, sm in m.by_subject().items()}
    return doc


def records_to_jsonl(records: Iterable[WordRecord]) -> str:
    """One JSON object per word, newline-terminated."""
    return "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in records)


def _cell_json(c: GridCell) -> dict[str, Any]:
    return {"granularity": c.granularity, "beam_width": c.beam_width, **_summary(c.metrics)}


def grid_to_json(grid: GridResult) -> dict[str, Any]:
    return {"cells": [_cell_json(c) for c in grid.cells], "best": _cell_json(grid.best)}


def _ordered_subjects(subjects: Iterable[str], ood_subjects: Collection[str]) -> list[str]:
    names = sorted(set(subjects))
    return [s for s in names if s in ood_subjects] + [s for s in names if s not in ood_subjects]


def kernels_to_json(results: Mapping[str, Metrics], ood_subjects: Collection[str] = ()) -> dict[str, Any]:
    """Per-kernel summaries plus the in-domain average."""
    doc: dict[str, Any] = {}
    for name, m in results.items():
        entry = metrics_to_json(m)
        in_domain = [sm for s, sm in m.by_subject().items() if s not in ood_subjects]
        if in_domain:
            entry["in_domain"] = _summary(weighted_average(in_domain))
        doc[name] = entry
    return doc


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]

    def line(cells: list[str]) -> str:
        first = cells[0].ljust(widths[0])
        rest = [c.rjust(w) for c, w in zip(cells[1:], widths[1:], strict=True)]
        return "  ".join([first, *rest]).rstrip()

    rule = "  ".join("-" * w for w in widths)
    return "\n".join([line(header), rule, *(line(r) for r in rows)])


def format_metrics_table(m: Metrics) -> str:
    """Words, accuracy and mean edit distance per subject and overall."""
    rows = [[s, str(sm.total), f"{sm.accuracy:.4f}", f"{sm.mean_edit_distance:.4f}"] for s, sm in m.by_subject().items()]
    rows.append(["All", str(m.total), f"{m.accuracy:.4f}", f"{m.mean_edit_distance:.4f}"])
    return _table(["Subject", "Words", "Accuracy", "MED"], rows)


def format_grid_table(grid: GridResult) -> str:
    """Accuracy / mean edit distance with G down the side and K across."""
    ks = grid.beam_widths
    rows = []
    for g in grid.granularities:
        row = [f"G={g}"]
        for k in ks:
            m = grid.cell(g, k).metrics
            row.append(f"{m.accuracy:.4f}/{m.mean_edit_distance:.4f}")
        rows.append(row)
    best = grid.best
    table = _table(["", *(f"K={k}" for k in ks)], rows)
    return f"{table}\nBest: G={best.granularity} K={best.beam_width}"


def format_kernel_table(results: Mapping[str, Metrics], ood_subjects: Collection[str] = ()) -> str:
    """
    Word accuracy per subject (rows) and kernel (columns).

    Out-of-domain subjects come first; the last row averages the in-domain
    subjects weighted by their word counts.
    """
    names = list(results)
    per_kernel = {name: results[name].by_subject() for name in names}
    subjects = _ordered_subjects((s for subs in per_kernel.values() for s in subs), ood_subjects)
    rows = []
    for s in subjects:
        title = f"{s} (OOD)" if s in ood_subjects else s
        rows.append([title, *(f"{per_kernel[n][s].accuracy:.4f}" if s in per_kernel[n] else "-" for n in names)])
    if any(s not in ood_subjects for s in subjects):
        avg = []
        for n in names:
            in_domain = [m for s, m in per_kernel[n].items() if s not in ood_subjects]
            avg.append(f"{weighted_average(in_domain).accuracy:.4f}")
        rows.append(["ID avg", *avg])
    return _table(["Subject", *(KERNEL_TITLES.get(n, n) for n in names)], rows)
