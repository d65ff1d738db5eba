"""Word universe: dictionary, frequency table, and observed daily results.

Everything downstream works on validated five-letter lowercase words. The
structures built here are immutable after load and safe to share across
threads.
"""

from __future__ import annotations

import csv
import datetime
import hashlib
import logging
from dataclasses import dataclass, field

import numpy as np

from .distribution import GuessDistribution, renormalize_percent
from .errors import ParseError

log = logging.getLogger(__name__)

WORD_LENGTH = 5
ALPHABET = "abcdefghijklmnopqrstuvwxyz"
ALPHABET_SIZE = 26

OBSERVED_HEADER = ["date", "word", "reported", "p1", "p2", "p3", "p4", "p5", "p6", "px"]
FREQUENCY_HEADER = ["word", "freq_per_million"]


def validate_word(token: str, path=None, line=None) -> str:
    """Lowercase and validate a raw token; raises ParseError on bad input."""
    word = token.strip().lower()
    if len(word) != WORD_LENGTH:
        raise ParseError(f"word {token!r} has length {len(word)}, expected {WORD_LENGTH}",
                         path=path, line=line)
    if any(c not in ALPHABET for c in word):
        raise ParseError(f"word {token!r} contains non-letter characters", path=path, line=line)
    return word


def word_codes(word: str) -> np.ndarray:
    """Letter indices 0..25 for one word."""
    return np.frombuffer(word.encode("ascii"), dtype=np.uint8) - ord("a")


@dataclass(frozen=True)
class Lexicon:
    """Ordered, duplicate-free word list with stable ordinals."""

    words: tuple[str, ...]
    index: dict[str, int] = field(compare=False, repr=False)
    codes: np.ndarray = field(compare=False, repr=False)

    @classmethod
    def from_words(cls, words) -> "Lexicon":
        words = tuple(words)
        index = {}
        for i, w in enumerate(words):
            if w in index:
                raise ParseError(f"duplicate word {w!r} at positions {index[w]} and {i}")
            index[w] = i
        codes = np.zeros((len(words), WORD_LENGTH), dtype=np.uint8)
        for i, w in enumerate(words):
            codes[i] = word_codes(w)
        codes.flags.writeable = False
        return cls(words=words, index=index, codes=codes)

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return word in self.index

    def __iter__(self):
        return iter(self.words)

    def digest(self) -> str:
        """SHA-256 of the canonical word list, independent of line endings."""
        payload = ("\n".join(self.words) + "\n").encode("ascii")
        return hashlib.sha256(payload).hexdigest()


@dataclass(frozen=True)
class FrequencyTable:
    """Occurrences per million text tokens; words never seen get 0."""

    values: dict[str, float]
    missing: tuple[str, ...] = ()

    def get(self, word: str) -> float:
        return self.values.get(word, 0.0)


@dataclass(frozen=True)
class ObservedRecord:
    date: datetime.date
    word: str
    reported: int
    dist: GuessDistribution


def load_dictionary(path) -> Lexicon:
    """Read a one-word-per-line dictionary, preserving file order."""
    words = []
    seen = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            token = raw.strip()
            if not token:
                continue
            word = validate_word(token, path=path, line=lineno)
            if word in seen:
                raise ParseError(f"duplicate word {word!r} (first seen at line {seen[word]})",
                                 path=path, line=lineno)
            seen[word] = lineno
            words.append(word)
    if not words:
        raise ParseError("dictionary contains no words", path=path)
    return Lexicon.from_words(words)


def dump_dictionary(lex: Lexicon, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for w in lex.words:
            fh.write(w + "\n")


def load_frequencies(path, lex: Lexicon) -> FrequencyTable:
    """Read the word,freq_per_million CSV restricted to the lexicon.

    Lexicon words absent from the file default to frequency 0 and are
    reported via the table's `missing` field (plus a log warning).
    """
    values = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != FREQUENCY_HEADER:
            raise ParseError(f"expected header {','.join(FREQUENCY_HEADER)!r}, got {header!r}",
                             path=path, line=1)
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise ParseError(f"expected 2 fields, got {len(row)}", path=path, line=lineno)
            word = validate_word(row[0], path=path, line=lineno)
            try:
                freq = float(row[1])
            except ValueError:
                raise ParseError(f"bad frequency {row[1]!r}", path=path, line=lineno) from None
            if not np.isfinite(freq) or freq < 0:
                raise ParseError(f"frequency must be a non-negative real, got {row[1]!r}",
                                 path=path, line=lineno)
            if word in lex:
                values[word] = freq
    missing = tuple(w for w in lex.words if w not in values)
    if missing:
        log.warning("%d of %d lexicon words have no frequency entry; defaulting to 0",
                    len(missing), len(lex))
    return FrequencyTable(values=values, missing=missing)


def load_observed_results(path, lex: Lexicon, allow_oov: bool = False) -> list[ObservedRecord]:
    """Read daily results; renormalizes the seven percentages to sum 100.

    Rows are returned sorted by date. Words missing from the lexicon are
    rejected unless allow_oov is set, in which case they are admitted with
    a warning.
    """
    records = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != OBSERVED_HEADER:
            raise ParseError(f"expected header {','.join(OBSERVED_HEADER)!r}, got {header!r}",
                             path=path, line=1)
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(OBSERVED_HEADER):
                raise ParseError(f"expected {len(OBSERVED_HEADER)} fields, got {len(row)}",
                                 path=path, line=lineno)
            try:
                date = datetime.date.fromisoformat(row[0])
            except ValueError:
                raise ParseError(f"bad date {row[0]!r} (expected YYYY-MM-DD)", path=path,
                                 line=lineno) from None
            word = validate_word(row[1], path=path, line=lineno)
            if word not in lex:
                if not allow_oov:
                    raise ParseError(f"word {word!r} is not in the dictionary "
                                     "(use allow_oov to admit it)", path=path, line=lineno)
                log.warning("%s:%d: word %r is not in the dictionary; admitted (allow_oov)",
                            path, lineno, word)
            try:
                reported = int(row[2])
                percents = [float(v) for v in row[3:10]]
            except ValueError:
                raise ParseError("bad numeric field", path=path, line=lineno) from None
            if reported < 0:
                raise ParseError(f"reported count must be non-negative, got {reported}",
                                 path=path, line=lineno)
            try:
                dist = renormalize_percent(percents)
            except Exception as exc:
                raise ParseError(str(exc), path=path, line=lineno) from None
            records.append(ObservedRecord(date=date, word=word, reported=reported, dist=dist))
    records.sort(key=lambda r: r.date)
    return records
