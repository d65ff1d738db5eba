"""Guess-count distribution prediction and difficulty classification for
five-letter word puzzles."""

from .bundle import ModelBundle, load_bundle, save_bundle
from .config import RunConfig
from .distribution import GuessDistribution, expectation
from .errors import DataError, NumericalError, ParseError, WordleDifficultyError
from .feedback import compute_feedback, filter_candidates, is_consistent
from .features import FeatureVector, feature_matrix, feature_vector, standardize
from .markov import MarkovModel, associativity, build_markov
from .pipeline import (DeviationModel, LevelModel, classify_word, evaluate,
                       fit_deviation_model, fit_level_model, predict_distribution)
from .simulate import (SimulationReport, play_random_game, simulate_corpus,
                       simulate_word)
from .words import (FrequencyTable, Lexicon, ObservedRecord, load_dictionary,
                    load_frequencies, load_observed_results)

__version__ = "0.1.0"
