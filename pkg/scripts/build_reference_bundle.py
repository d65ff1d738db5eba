#!/usr/bin/env python3
"""Regenerate the packaged reference bundle.

The reference difficulty classifier ships fixed published weights (factor
score coefficients, level weights, cutpoints). The rest of the bundle is
derived from the packaged assets: the letter-chain model and the feature
standardization are computed over the full packaged dictionary with the
packaged frequency table. The bundle carries no deviation model; fit one
against observed results with `wordle-difficulty fit-deviation`.
"""

import argparse
import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from wordle_difficulty.bundle import (REFERENCE_BETA, REFERENCE_CUTPOINTS,  # noqa: E402
                                      REFERENCE_SCORE_COEF, SCHEMA_VERSION,
                                      ModelBundle, new_metadata, save_bundle)
from wordle_difficulty.factor import FactorModel  # noqa: E402
from wordle_difficulty.features import feature_matrix, standardize  # noqa: E402
from wordle_difficulty.markov import build_markov  # noqa: E402
from wordle_difficulty.ologit import OrdLogitModel  # noqa: E402
from wordle_difficulty.pipeline import LevelModel  # noqa: E402
from wordle_difficulty.words import load_dictionary, load_frequencies  # noqa: E402

DATA = pathlib.Path(__file__).resolve().parents[1] / "src/wordle_difficulty/data"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dict", default=str(DATA / "dictionary.txt"))
    parser.add_argument("--freq", default=str(DATA / "frequencies.csv"))
    parser.add_argument("--out", default=str(DATA / "reference_bundle.json"))
    args = parser.parse_args()

    lex = load_dictionary(args.dict)
    freq = load_frequencies(args.freq, lex)
    markov = build_markov(lex, smoothing=0.0)

    print(f"extracting features for all {len(lex)} dictionary words...")
    rows = feature_matrix(list(lex.words), lex, freq, markov)
    _, standardization = standardize(rows)

    m = len(REFERENCE_BETA)
    level = LevelModel(
        standardization=standardization,
        factors=FactorModel(score_coef=np.asarray(REFERENCE_SCORE_COEF, dtype=np.float64),
                            m=m),
        ologit=OrdLogitModel(beta=np.asarray(REFERENCE_BETA, dtype=np.float64),
                             cutpoints=np.asarray(REFERENCE_CUTPOINTS, dtype=np.float64),
                             k=m),
        cluster_k=4,
        provenance="reference",
    )
    out = ModelBundle(schema_version=SCHEMA_VERSION, markov=markov, deviation=None,
                      level=level, metadata=new_metadata(lex, None, None))
    save_bundle(out, args.out)
    print(f"wrote reference bundle to {args.out}")


if __name__ == "__main__":
    main()
