"""Pytest configuration and shared fixtures."""

import logging
import os
from collections.abc import Generator

import numpy as np
import pytest

from autocorrect import CorrectionIndex, FrequencyDictionary, build_index
from seqcore import Corpus
from synthglyph import default_profiles, gen_corpus

# Keep the CLI at WARNING unless a test asks for more
os.environ["INKLINE_DEBUG"] = "0"


@pytest.fixture(autouse=True)
def restore_root_logger() -> Generator[None]:
    """CLI commands reconfigure the root logger; put it back after each test."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def small_corpus() -> Corpus:
    """One synthetic writer, two recordings per letter, a few words."""
    return gen_corpus(letters_per_class=2, word_list=("cat", "a", "i"), profiles=default_profiles(1, seed=0), seed=0, reps=(1, 1))


@pytest.fixture
def word_dictionary() -> FrequencyDictionary:
    return FrequencyDictionary({"a": 1000, "i": 500, "cat": 800, "cab": 3, "the": 23135851162})


@pytest.fixture
def word_index(word_dictionary: FrequencyDictionary) -> CorrectionIndex:
    return build_index(word_dictionary, 2)
