"""The ten lexical attributes used by the difficulty-level models.

Window counts ("strings of x letters") are taken over every contiguous
window of the word; a word's score is the sum over its windows of the
number of OTHER lexicon words matching that window, either at identical
positions (constrained) or anywhere (unconstrained). Self matches are
excluded throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import lexical_counts_kernel
from .errors import DataError
from .markov import MarkovModel, associativity
from .words import WORD_LENGTH, FrequencyTable, Lexicon, word_codes

FEATURE_NAMES = ("FREQ", "Orth", "N1_C", "N2_C", "N3_C",
                 "UN1_C", "UN2_C", "UN3_C", "MARKOV", "DISTANCE")
FREQ_COLUMN = 0  # log1p-transformed before standardization

_AGGREGATES = {"sum": sum, "mean": lambda v: sum(v) / len(v), "max": max}


@dataclass(frozen=True)
class FeatureVector:
    freq: float
    orth: int
    n1_c: int
    n2_c: int
    n3_c: int
    un1_c: int
    un2_c: int
    un3_c: int
    markov: float
    distance: float

    def as_array(self) -> np.ndarray:
        return np.array([self.freq, self.orth, self.n1_c, self.n2_c, self.n3_c,
                         self.un1_c, self.un2_c, self.un3_c, self.markov, self.distance],
                        dtype=np.float64)


@dataclass(frozen=True)
class Standardization:
    """Column means/sds of the transformed feature matrix (FREQ on log1p scale)."""

    mean: np.ndarray
    sd: np.ndarray

    def transform(self, matrix: np.ndarray) -> np.ndarray:
        matrix = np.atleast_2d(np.asarray(matrix, dtype=np.float64)).copy()
        matrix[:, FREQ_COLUMN] = np.log1p(matrix[:, FREQ_COLUMN])
        return (matrix - self.mean) / self.sd

    def inverse(self, z: np.ndarray) -> np.ndarray:
        matrix = np.atleast_2d(np.asarray(z, dtype=np.float64)) * self.sd + self.mean
        matrix[:, FREQ_COLUMN] = np.expm1(matrix[:, FREQ_COLUMN])
        return matrix


def levenshtein(a: str, b: str) -> int:
    """Classic two-row edit distance."""
    prev = list(range(len(b) + 1))
    for i in range(1, len(a) + 1):
        cur = [i] + [0] * len(b)
        for j in range(1, len(b) + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        prev = cur
    return prev[len(b)]


def orth_neighbors(w: str, lex: Lexicon) -> int:
    """Words differing from w in exactly one position."""
    count = 0
    for v in lex.words:
        if v == w:
            continue
        diff = sum(1 for a, b in zip(w, v) if a != b)
        if diff == 1:
            count += 1
    return count


def string_count(w: str, x: int, constrained: bool, lex: Lexicon,
                 aggregate: str = "sum") -> float:
    """Window-sharing count over the (6-x) windows of w.

    constrained: other words matching the window at the same positions;
    unconstrained: other words containing the window anywhere (each word
    counted once per window of w). `aggregate` folds the per-window counts.
    """
    if x not in (1, 2, 3):
        raise DataError(f"window length must be 1, 2 or 3, got {x}")
    if aggregate not in _AGGREGATES:
        raise DataError(f"unknown aggregate {aggregate!r}")
    per_window = []
    for start in range(WORD_LENGTH - x + 1):
        window = w[start:start + x]
        n = 0
        for v in lex.words:
            if v == w:
                continue
            if constrained:
                if v[start:start + x] == window:
                    n += 1
            elif window in v:
                n += 1
        per_window.append(n)
    value = _AGGREGATES[aggregate](per_window)
    return int(value) if aggregate in ("sum", "max") else value


def mean_edit_distance(w: str, lex: Lexicon) -> float:
    """Mean Levenshtein distance from w to every other lexicon word."""
    others = [v for v in lex.words if v != w]
    if not others:
        raise DataError(f"no words besides {w!r} to measure distance against")
    return sum(levenshtein(w, v) for v in others) / len(others)


def feature_vector(w: str, lex: Lexicon, freq: FrequencyTable,
                   markov: MarkovModel, aggregate: str = "sum") -> FeatureVector:
    return FeatureVector(
        freq=freq.get(w),
        orth=orth_neighbors(w, lex),
        n1_c=string_count(w, 1, True, lex, aggregate),
        n2_c=string_count(w, 2, True, lex, aggregate),
        n3_c=string_count(w, 3, True, lex, aggregate),
        un1_c=string_count(w, 1, False, lex, aggregate),
        un2_c=string_count(w, 2, False, lex, aggregate),
        un3_c=string_count(w, 3, False, lex, aggregate),
        markov=associativity(markov, w).log_raw,
        distance=mean_edit_distance(w, lex),
    )


def feature_matrix(words, lex: Lexicon, freq: FrequencyTable,
                   markov: MarkovModel) -> list[FeatureVector]:
    """Batch feature extraction (compiled pairwise counts, sum aggregation)."""
    words = list(words)
    if not words:
        return []
    targets = np.stack([word_codes(w) for w in words])
    counts, others = lexical_counts_kernel(targets, lex.codes)
    rows = []
    for i, w in enumerate(words):
        if others[i] == 0:
            raise DataError(f"no words besides {w!r} to measure distance against")
        c = counts[i]
        rows.append(FeatureVector(
            freq=freq.get(w),
            orth=int(c[0]),
            n1_c=int(c[1]), n2_c=int(c[2]), n3_c=int(c[3]),
            un1_c=int(c[4]), un2_c=int(c[5]), un3_c=int(c[6]),
            markov=associativity(markov, w).log_raw,
            distance=float(c[7]) / float(others[i]),
        ))
    return rows


def standardize(rows) -> tuple[np.ndarray, Standardization]:
    """Column z-scores (population mean, sample sd) of the feature matrix,
    with FREQ moved to the log1p scale first."""
    rows = list(rows)
    if len(rows) < 2:
        raise DataError("standardization needs at least 2 rows")
    matrix = np.stack([r.as_array() for r in rows])
    matrix[:, FREQ_COLUMN] = np.log1p(matrix[:, FREQ_COLUMN])
    mean = matrix.mean(axis=0)
    sd = matrix.std(axis=0, ddof=1)
    dead = np.flatnonzero(sd == 0)
    if dead.size:
        names = ", ".join(FEATURE_NAMES[j] for j in dead)
        raise DataError(f"feature column(s) with zero variance: {names}")
    mean.flags.writeable = False
    sd.flags.writeable = False
    return (matrix - mean) / sd, Standardization(mean=mean, sd=sd)
