"""Word frequency dictionary (SymSpell text format: ``word count`` per line)."""

import logging
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from pathlib import Path

import config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrequencyDictionary:
    """Lowercase ASCII words with positive corpus counts."""

    entries: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Validate and copy the entries."""
        checked: dict[str, int] = {}
        for word, count in self.entries.items():
            if not word or not word.isascii() or not word.isalpha() or word != word.lower():
                raise ValueError(f"Dictionary words must be lowercase ASCII letters, got {word!r}")
            if int(count) < 1:
                raise ValueError(f"Frequency of {word!r} must be at least 1, got {count}")
            checked[word] = int(count)
        object.__setattr__(self, "entries", checked)

    @classmethod
    def from_counts(cls, counts: Mapping[str, int]) -> "FrequencyDictionary":
        return cls(dict(counts))

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: object) -> bool:
        return word in self.entries

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    def frequency(self, word: str) -> int:
        return self.entries[word]


def parse_dictionary(text: str, source: str = "<string>") -> FrequencyDictionary:
    """
    Parse ``word count`` lines.

    Words are lowercased; a repeated word keeps its largest count. Blank lines
    and lines starting with ``#`` are skipped.
    """
    counts: dict[str, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{source}:{line_no}: expected 'word count', got {line!r}")
        word, count = parts[0].lower(), parts[1]
        try:
            value = int(count)
        except ValueError:
            raise ValueError(f"{source}:{line_no}: count is not an integer: {count!r}") from None
        counts[word] = max(value, counts.get(word, 0))
    return FrequencyDictionary(counts)


def load_dictionary(path: str | Path = config.DICTIONARY_PATH) -> FrequencyDictionary:
    """Read a dictionary file (the bundled English list by default)."""
    p = Path(path)
    dictionary = parse_dictionary(p.read_text(), str(p))
    logger.info("Loaded %d dictionary words from %s", len(dictionary), p)
    return dictionary
