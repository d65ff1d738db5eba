import logging

import pytest

from wordle_difficulty.bundle import (packaged_dictionary_path,
                                      packaged_frequencies_path)
from wordle_difficulty.words import load_dictionary, load_frequencies

logging.getLogger("wordle_difficulty").setLevel(logging.ERROR)


@pytest.fixture(scope="session")
def shipped_lex():
    return load_dictionary(str(packaged_dictionary_path()))


@pytest.fixture(scope="session")
def shipped_freq(shipped_lex):
    return load_frequencies(str(packaged_frequencies_path()), shipped_lex)
