"""Tile feedback for (guess, solution) pairs and consistency filtering.

Marks follow the official two-pass rule, which is the only semantics that
is correct when letters repeat: greens are assigned first and consume
solution letters; yellows are then awarded left to right while unconsumed
multiplicity remains.
"""

from __future__ import annotations

import numpy as np

from .errors import DataError
from .words import ALPHABET_SIZE, WORD_LENGTH, Lexicon

GRAY, YELLOW, GREEN = 0, 1, 2

_MARK_TEXT = {GRAY: "X", YELLOW: "Y", GREEN: "G"}
_TEXT_MARK = {v: k for k, v in _MARK_TEXT.items()}

ALL_GREEN_CODE = sum(GREEN * 3**i for i in range(WORD_LENGTH))  # 242


def compute_feedback(guess: str, solution: str) -> tuple[int, ...]:
    """Five marks for guessing `guess` against `solution`."""
    marks = [GRAY] * WORD_LENGTH
    remaining = [0] * ALPHABET_SIZE
    for i in range(WORD_LENGTH):
        if guess[i] == solution[i]:
            marks[i] = GREEN
        else:
            remaining[ord(solution[i]) - ord("a")] += 1
    for i in range(WORD_LENGTH):
        if marks[i] == GREEN:
            continue
        c = ord(guess[i]) - ord("a")
        if remaining[c] > 0:
            marks[i] = YELLOW
            remaining[c] -= 1
    return tuple(marks)


def encode_feedback(marks) -> int:
    """Base-3 packing (cell 0 least significant): Gray=0, Yellow=1, Green=2."""
    if len(marks) != WORD_LENGTH:
        raise DataError(f"feedback needs {WORD_LENGTH} cells, got {len(marks)}")
    code = 0
    for i, m in enumerate(marks):
        if m not in (GRAY, YELLOW, GREEN):
            raise DataError(f"bad feedback mark {m!r}")
        code += m * 3**i
    return code


def decode_feedback(code: int) -> tuple[int, ...]:
    if not 0 <= code <= 242:
        raise DataError(f"feedback code {code} outside 0..242")
    marks = []
    for _ in range(WORD_LENGTH):
        marks.append(code % 3)
        code //= 3
    return tuple(marks)


def feedback_to_text(marks) -> str:
    """CLI text form, e.g. 'YXYXG' (G=green, Y=yellow, X=gray)."""
    return "".join(_MARK_TEXT[m] for m in marks)


def feedback_from_text(text: str) -> tuple[int, ...]:
    text = text.strip().upper()
    if len(text) != WORD_LENGTH or any(c not in _TEXT_MARK for c in text):
        raise DataError(f"bad feedback string {text!r}; expected 5 characters over G/Y/X")
    return tuple(_TEXT_MARK[c] for c in text)


def is_consistent(candidate: str, guess: str, observed) -> bool:
    """A candidate is consistent iff it would have produced the observed marks."""
    return compute_feedback(guess, candidate) == tuple(observed)


def filter_candidates(candidates, guess: str, observed) -> list[str]:
    observed = tuple(observed)
    return [c for c in candidates if compute_feedback(guess, c) == observed]


def feedback_matrix(lex: Lexicon) -> np.ndarray:
    """All-pairs feedback codes: entry [g, s] = encoded feedback of guessing
    word g against solution s. Cached on the lexicon after the first call."""
    cached = getattr(lex, "_feedback_matrix", None)
    if cached is not None:
        return cached
    from ._kernels import feedback_matrix_kernel

    matrix = feedback_matrix_kernel(lex.codes)
    matrix.flags.writeable = False
    object.__setattr__(lex, "_feedback_matrix", matrix)
    return matrix
