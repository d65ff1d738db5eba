"""Monte Carlo simulation of the random-consistent-guess player.

Each game draws a uniform guess from the candidates still consistent with
every previous feedback, so the simulated player never wastes a guess on an
eliminated word. Results are a pure function of (seed, lexicon, word, reps):
word substreams are derived from the word's lexicon ordinal, never from
batch position or scheduling.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ._kernels import feedback_matrix_kernel, simulate_games_kernel
from .distribution import GuessDistribution
from .errors import DataError
from .feedback import compute_feedback, feedback_matrix
from .rng import SplitMix64, substream_seed
from .words import Lexicon, word_codes

log = logging.getLogger(__name__)

FAILED = 7  # recorded try count when all six rounds miss


@dataclass(frozen=True)
class SimulationReport:
    word: str
    reps: int
    raw: GuessDistribution
    expectation: float


@dataclass
class CorpusSimulation:
    """Per-word reports in input order plus any per-word failures."""

    reports: list[SimulationReport] = field(default_factory=list)
    errors: list[tuple[str, str]] = field(default_factory=list)


def play_random_game(solution: str, lex: Lexicon, rng: SplitMix64,
                     allow_oov: bool = False) -> int:
    """One game; returns the winning round 1..6, or FAILED.

    Reference implementation over word strings. The batch simulators run
    the identical draw/filter sequence in compiled code.
    """
    candidates = list(lex.words)
    if solution not in lex.index:
        if not allow_oov:
            raise DataError(f"solution {solution!r} is not in the lexicon "
                            "(use allow_oov to append it)")
        log.warning("solution %r is not in the lexicon; appended for simulation", solution)
        candidates.append(solution)
    for round_no in range(1, 7):
        guess = candidates[rng.randbelow(len(candidates))]
        if guess == solution:
            return round_no
        observed = compute_feedback(guess, solution)
        candidates = [c for c in candidates if compute_feedback(guess, c) == observed]
    return FAILED


def _solution_setup(solution: str, lex: Lexicon, allow_oov: bool):
    """(feedback matrix, solution index, substream ordinal) for one word."""
    if solution in lex.index:
        ordinal = lex.index[solution]
        return feedback_matrix(lex), ordinal, ordinal
    if not allow_oov:
        raise DataError(f"solution {solution!r} is not in the lexicon "
                        "(use allow_oov to append it)")
    log.warning("solution %r is not in the lexicon; appended for simulation", solution)
    extended = np.vstack([lex.codes, word_codes(solution)[None, :]])
    return feedback_matrix_kernel(extended), len(lex), len(lex)


def simulate_word(solution: str, lex: Lexicon, reps: int, seed: int,
                  allow_oov: bool = False) -> SimulationReport:
    """Play `reps` games on one solution word with a private random stream."""
    if reps < 1:
        raise DataError("reps must be >= 1")
    fb, sol_idx, ordinal = _solution_setup(solution, lex, allow_oov)
    seeds = np.array([substream_seed(seed, ordinal)], dtype=np.uint64)
    counts = simulate_games_kernel(fb, np.array([sol_idx], dtype=np.int64), reps, seeds)[0]
    raw = GuessDistribution.from_counts(counts, reps)
    return SimulationReport(word=solution, reps=reps, raw=raw, expectation=raw.expectation)


def simulate_corpus(words, lex: Lexicon, reps: int, seed: int,
                    allow_oov: bool = False, threads: int | None = None) -> CorpusSimulation:
    """Simulate many words; per-word failures are collected, not fatal."""
    if reps < 1:
        raise DataError("reps must be >= 1")
    words = list(words)
    result = CorpusSimulation()
    in_lex = [w for w in words if w in lex.index]

    import numba

    previous = numba.get_num_threads()
    if threads is not None:
        numba.set_num_threads(max(1, min(threads, numba.config.NUMBA_NUM_THREADS)))
    try:
        by_word: dict[str, SimulationReport] = {}
        if in_lex:
            fb = feedback_matrix(lex)
            distinct = list(dict.fromkeys(in_lex))
            ordinals = np.array([lex.index[w] for w in distinct], dtype=np.int64)
            seeds = np.array([substream_seed(seed, o) for o in ordinals], dtype=np.uint64)
            counts = simulate_games_kernel(fb, ordinals, reps, seeds)
            for w, row in zip(distinct, counts):
                raw = GuessDistribution.from_counts(row, reps)
                by_word[w] = SimulationReport(word=w, reps=reps, raw=raw,
                                              expectation=raw.expectation)
        for w in words:
            if w in by_word:
                result.reports.append(by_word[w])
                continue
            try:
                report = simulate_word(w, lex, reps, seed, allow_oov=allow_oov)
            except DataError as exc:
                result.errors.append((w, str(exc)))
                continue
            by_word[w] = report
            result.reports.append(report)
    finally:
        numba.set_num_threads(previous)
    return result
