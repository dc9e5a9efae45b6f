"""Synthetic writers, letter glyphs and corpus generation."""

from .generator import (
    DEFAULT_WORDS,
    LETTER_ADVANCE,
    gen_corpus,
    gen_letter,
    gen_still,
    gen_word,
    read_word_list,
    render_path,
    write_corpus,
)
from .glyphs import TEMPLATES, GlyphTemplate, template
from .profiles import (
    DEFAULT_SPEED,
    SubjectProfile,
    calibrate_speed,
    default_profiles,
    letter_frames,
    mean_letter_frames,
    ood_profile,
)

__all__ = [
    "DEFAULT_SPEED",
    "DEFAULT_WORDS",
    "LETTER_ADVANCE",
    "TEMPLATES",
    "GlyphTemplate",
    "SubjectProfile",
    "calibrate_speed",
    "default_profiles",
    "gen_corpus",
    "gen_letter",
    "gen_still",
    "gen_word",
    "letter_frames",
    "mean_letter_frames",
    "ood_profile",
    "read_word_list",
    "render_path",
    "template",
    "write_corpus",
]
