#!/usr/bin/env python3
"""Regenerate the packaged demo frequency table.

No word-frequency corpus ships with this repository, so the packaged table
is SYNTHETIC: a seeded Zipf-like curve over a deterministic shuffle of the
dictionary, with a slice of words deliberately left out to exercise the
missing-frequency path. Replace it with a real occurrences-per-million
table for research use; the CSV schema is `word,freq_per_million`.
"""

import argparse
import csv
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from wordle_difficulty.rng import SplitMix64  # noqa: E402
from wordle_difficulty.words import load_dictionary  # noqa: E402

DEFAULT_DICT = pathlib.Path(__file__).resolve().parents[1] / "src/wordle_difficulty/data/dictionary.txt"
DEFAULT_OUT = pathlib.Path(__file__).resolve().parents[1] / "src/wordle_difficulty/data/frequencies.csv"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dict", default=str(DEFAULT_DICT))
    parser.add_argument("--out", default=str(DEFAULT_OUT))
    parser.add_argument("--seed", type=int, default=20220107)
    parser.add_argument("--coverage", type=float, default=0.85,
                        help="fraction of words that get a frequency row")
    args = parser.parse_args()

    lex = load_dictionary(args.dict)
    rng = SplitMix64(args.seed)
    words = list(lex.words)
    # Fisher-Yates with the package RNG keeps the asset reproducible.
    for i in range(len(words) - 1, 0, -1):
        j = rng.randbelow(i + 1)
        words[i], words[j] = words[j], words[i]

    n_covered = int(len(words) * args.coverage)
    rows = []
    for rank, word in enumerate(words[:n_covered], start=1):
        freq = 2500.0 / (rank + 1) ** 0.9
        rows.append((word, round(freq, 4)))
    rows.sort()

    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["word", "freq_per_million"])
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows ({len(words) - n_covered} words left uncovered) to {args.out}")


if __name__ == "__main__":
    main()
