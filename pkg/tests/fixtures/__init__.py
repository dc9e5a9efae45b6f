"""Test fixtures for sequences, prediction tables and classifiers."""

from tests.fixtures.models import TINY_POINTS, constant_model, tiny_hparams, tiny_model, zero_model
from tests.fixtures.sequences import (
    TABLE_FRAMES_CSV,
    constant_sequence,
    contains_slice,
    make_sequence,
    ramp_sequence,
    random_sequence,
)
from tests.fixtures.tables import (
    brute_force_lookup,
    brute_force_top_k,
    compositions,
    osa_distance,
    random_table,
    table_from_best,
)

__all__ = [
    "TABLE_FRAMES_CSV",
    "TINY_POINTS",
    "brute_force_lookup",
    "brute_force_top_k",
    "compositions",
    "constant_model",
    "constant_sequence",
    "contains_slice",
    "make_sequence",
    "osa_distance",
    "ramp_sequence",
    "random_sequence",
    "random_table",
    "table_from_best",
    "tiny_hparams",
    "tiny_model",
    "zero_model",
]
