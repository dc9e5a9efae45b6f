"""Uppercase letterforms as polylines on the unit box (x right, y up)."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from seqcore import LETTERS, FloatArray

Point = tuple[float, float]
Stroke = tuple[Point, ...]


@dataclass(frozen=True)
class GlyphTemplate:
    """
    Pen path of one letter.

    Strokes are drawn in order; the pen travels in a straight line from the end
    of one stroke to the start of the next, so the whole glyph is one path.
    """

    letter: str
    strokes: tuple[Stroke, ...]

    def __post_init__(self) -> None:
        """Validate letter and coordinates."""
        if self.letter not in LETTERS:
            raise ValueError(f"Glyph letter must be A-Z, got {self.letter!r}")
        points = [p for stroke in self.strokes for p in stroke]
        if len(points) < 2:
            raise ValueError(f"Glyph {self.letter} needs at least 2 points")
        for x, y in points:
            if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
                raise ValueError(f"Glyph {self.letter} point ({x}, {y}) outside the unit box")

    @cached_property
    def path(self) -> FloatArray:
        """(P, 2) concatenated pen path."""
        return np.array([p for stroke in self.strokes for p in stroke], dtype=np.float64)

    @cached_property
    def arc_length(self) -> float:
        return float(np.linalg.norm(np.diff(self.path, axis=0), axis=1).sum())

    def sample(self, n: int) -> FloatArray:
        """n points spaced evenly along the path, endpoints included."""
        if n < 2:
            raise ValueError(f"Need at least 2 samples, got {n}")
        seg = np.linalg.norm(np.diff(self.path, axis=0), axis=1)
        s = np.concatenate([[0.0], np.cumsum(seg)])
        # Repeated points would make s non-increasing
        keep = np.concatenate([[True], seg > 0])
        s, pts = s[keep], self.path[keep]
        targets = np.linspace(0.0, s[-1], n)
        return np.column_stack([np.interp(targets, s, pts[:, 0]), np.interp(targets, s, pts[:, 1])])


_O: Stroke = ((0.5, 1), (0.1, 0.8), (0, 0.5), (0.1, 0.2), (0.5, 0), (0.9, 0.2), (1, 0.5), (0.9, 0.8), (0.5, 1))
_P: Stroke = ((0, 0), (0, 1), (0.8, 1), (1, 0.8), (0.8, 0.5), (0, 0.5))

_STROKES: dict[str, tuple[Stroke, ...]] = {
    "A": (((0, 0), (0.5, 1), (1, 0)), ((0.25, 0.5), (0.75, 0.5))),
    "B": (((0, 0), (0, 1), (0.7, 1), (0.9, 0.85), (0.7, 0.5), (0, 0.5)), ((0.7, 0.5), (1, 0.3), (0.8, 0), (0, 0))),
    "C": (((1, 0.9), (0.6, 1), (0.2, 0.85), (0, 0.5), (0.2, 0.15), (0.6, 0), (1, 0.1)),),
    "D": (((0, 0), (0, 1), (0.6, 1), (1, 0.7), (1, 0.3), (0.6, 0), (0, 0)),),
    "E": (((1, 1), (0, 1), (0, 0), (1, 0)), ((0, 0.5), (0.7, 0.5))),
    "F": (((1, 1), (0, 1), (0, 0)), ((0, 0.5), (0.7, 0.5))),
    "G": (((1, 0.9), (0.6, 1), (0.2, 0.85), (0, 0.5), (0.2, 0.15), (0.6, 0), (1, 0.2), (1, 0.5), (0.6, 0.5)),),
    "H": (((0, 1), (0, 0)), ((1, 1), (1, 0)), ((0, 0.5), (1, 0.5))),
    "I": (((0.5, 1), (0.5, 0)), ((0.2, 1), (0.8, 1)), ((0.2, 0), (0.8, 0))),
    "J": (((0.2, 1), (1, 1)), ((0.7, 1), (0.7, 0.2), (0.5, 0), (0.2, 0.05), (0, 0.3))),
    "K": (((0, 1), (0, 0)), ((1, 1), (0, 0.4)), ((0.3, 0.6), (1, 0))),
    "L": (((0, 1), (0, 0), (0.8, 0)),),
    "M": (((0, 0), (0, 1), (0.5, 0.4), (1, 1), (1, 0)),),
    "N": (((0, 0), (0, 1), (1, 0), (1, 1)),),
    "O": (_O,),
    "P": (_P,),
    "Q": (_O, ((0.6, 0.3), (1, 0))),
    "R": (_P, ((0.4, 0.5), (1, 0))),
    "S": (((1, 0.9), (0.6, 1), (0.1, 0.85), (0.1, 0.6), (0.9, 0.4), (0.9, 0.15), (0.4, 0), (0, 0.1)),),
    "T": (((0, 1), (1, 1)), ((0.5, 1), (0.5, 0))),
    "U": (((0, 1), (0, 0.25), (0.3, 0), (0.7, 0), (1, 0.25), (1, 1)),),
    "V": (((0, 1), (0.5, 0), (1, 1)),),
    "W": (((0, 1), (0.25, 0), (0.5, 0.6), (0.75, 0), (1, 1)),),
    "X": (((0, 1), (1, 0)), ((1, 1), (0, 0))),
    "Y": (((0, 1), (0.5, 0.5), (1, 1)), ((0.5, 0.5), (0.5, 0))),
    "Z": (((0, 1), (1, 1), (0, 0), (1, 0)),),
}

TEMPLATES: dict[str, GlyphTemplate] = {
    letter: GlyphTemplate(
        letter,
        tuple(tuple((float(x), float(y)) for x, y in stroke) for stroke in strokes),
    )
    for letter, strokes in _STROKES.items()
}


def template(letter: str) -> GlyphTemplate:
    """Template for an uppercase or lowercase letter."""
    try:
        return TEMPLATES[letter.upper()]
    except KeyError:
        raise ValueError(f"No glyph template for {letter!r}") from None
