"""Word-level accuracy and edit-distance metrics."""

import math
from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

from errors import EmptyInputError


def levenshtein(a: str, b: str) -> int:
    """Unit-cost insert/delete/substitute distance."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


@dataclass(frozen=True)
class WordRecord:
    """Outcome of reconstructing one word recording."""

    label: str
    prediction: str
    subject: str = ""
    session: str = ""
    top_trajectory: str = ""
    n_trajectories: int = 0

    @property
    def distance(self) -> int:
        return levenshtein(self.label.lower(), self.prediction.lower())

    @property
    def correct(self) -> bool:
        return self.label.lower() == self.prediction.lower()

    def to_json(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "prediction": self.prediction,
            "subject": self.subject,
            "session": self.session,
            "top_trajectory": self.top_trajectory,
            "n_trajectories": self.n_trajectories,
            "distance": self.distance,
            "correct": self.correct,
        }


@dataclass(frozen=True)
class Metrics:
    """Exact-match accuracy and mean edit distance over a set of words."""

    accuracy: float
    mean_edit_distance: float
    records: tuple[WordRecord, ...] = field(default=())

    @classmethod
    def from_records(cls, records: Iterable[WordRecord]) -> "Metrics":
        items = tuple(records)
        if not items:
            raise EmptyInputError("Cannot compute metrics over zero words")
        n = len(items)
        return cls(
            accuracy=sum(r.correct for r in items) / n,
            mean_edit_distance=math.fsum(r.distance for r in items) / n,
            records=items,
        )

    @property
    def total(self) -> int:
        return len(self.records)

    def by_subject(self) -> dict[str, "Metrics"]:
        """Metrics per writer, in subject order."""
        groups: dict[str, list[WordRecord]] = defaultdict(list)
        for record in self.records:
            groups[record.subject].append(record)
        return {subject: Metrics.from_records(groups[subject]) for subject in sorted(groups)}


def weighted_average(parts: Iterable[Metrics]) -> Metrics:
    """Recombine disjoint metric sets (e.g. per-subject rows) into one."""
    return Metrics.from_records(r for m in parts for r in m.records)
