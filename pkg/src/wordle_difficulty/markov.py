"""First-order letter-chain model of how easily a word comes to mind.

A word's associativity is the probability that the chain generates it:
the first-letter probability times the four letter-transition
probabilities along the word. Counts come from the dictionary with every
word weighted equally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .words import ALPHABET_SIZE, Lexicon, word_codes

LOG_FLOOR = 1e-300  # keeps zero-probability words finite on the log scale


@dataclass(frozen=True)
class MarkovModel:
    first: np.ndarray  # (26,) first-letter probabilities
    trans: np.ndarray  # (26, 26) transition probabilities, rows sum to 1 (or all-zero)
    smoothing: float = 0.0


@dataclass(frozen=True)
class AssociativityScore:
    raw: float
    log_raw: float


def markov_from_codes(codes: np.ndarray, n_letters: int, smoothing: float = 0.0):
    """Add-k estimated (first, trans) matrices from letter-code rows.

    Transition counts use adjacent pairs; the last letter of a word is
    never a transition source. A source letter that never occurs yields an
    all-zero row when smoothing is 0.
    """
    if codes.shape[0] == 0:
        raise DataError("cannot build a letter-chain model from an empty lexicon")
    if smoothing < 0:
        raise DataError("smoothing must be non-negative")
    k = float(smoothing)
    n_words, length = codes.shape

    first_counts = np.bincount(codes[:, 0], minlength=n_letters).astype(np.float64)
    first = (first_counts + k) / (n_words + n_letters * k)

    pair_counts = np.zeros((n_letters, n_letters), dtype=np.float64)
    for pos in range(length - 1):
        np.add.at(pair_counts, (codes[:, pos], codes[:, pos + 1]), 1.0)
    source_counts = pair_counts.sum(axis=1)

    trans = np.zeros_like(pair_counts)
    denom = source_counts + n_letters * k
    occupied = denom > 0
    trans[occupied] = (pair_counts[occupied] + k) / denom[occupied, None]
    return first, trans


def build_markov(lex: Lexicon, smoothing: float = 0.0) -> MarkovModel:
    first, trans = markov_from_codes(lex.codes.astype(np.int64), ALPHABET_SIZE, smoothing)
    first.flags.writeable = False
    trans.flags.writeable = False
    return MarkovModel(first=first, trans=trans, smoothing=float(smoothing))


def sequence_probability(first: np.ndarray, trans: np.ndarray, seq) -> float:
    """Chain probability of a letter-code sequence."""
    seq = np.asarray(seq)
    p = float(first[seq[0]])
    for i in range(1, len(seq)):
        p *= float(trans[seq[i - 1], seq[i]])
    return p


def associativity(model: MarkovModel, word: str) -> AssociativityScore:
    raw = sequence_probability(model.first, model.trans, word_codes(word).astype(np.int64))
    return AssociativityScore(raw=raw, log_raw=math.log(max(raw, LOG_FLOOR)))
