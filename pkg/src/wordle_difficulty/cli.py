"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data/validation error, 3 numerical
failure. Data goes to stdout or --out; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import logging
import sys

import numpy as np

from . import bundle as bundle_mod
from .bundle import (ModelBundle, check_dictionary_digest, load_bundle,
                     new_metadata, save_bundle)
from .config import RunConfig
from .errors import DataError, NumericalError
from .features import FEATURE_NAMES, feature_matrix
from .markov import associativity, build_markov
from .pipeline import (classify_word, deviation_observations, evaluate,
                       fit_deviation_model, fit_level_model,
                       predict_distribution)
from .simulate import simulate_corpus
from .words import (FrequencyTable, load_dictionary, load_frequencies,
                    load_observed_results)

log = logging.getLogger(__name__)

SIMULATE_HEADER = ["word", "p1", "p2", "p3", "p4", "p5", "p6", "px",
                   "expectation", "reps", "seed"]
FEATURES_HEADER = ["word"] + list(FEATURE_NAMES)
PLOT_HEADER = ["figure", "word", "series", "x", "y"]


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_lexicon(args):
    path = args.dict if args.dict else str(bundle_mod.packaged_dictionary_path())
    return load_dictionary(path), path


def _load_freq(args, lex, used_packaged_dict):
    if getattr(args, "freq", None):
        return load_frequencies(args.freq, lex)
    if used_packaged_dict:
        return load_frequencies(str(bundle_mod.packaged_frequencies_path()), lex)
    log.warning("no --freq supplied; all frequencies default to 0")
    return FrequencyTable(values={})


@contextlib.contextmanager
def _open_out(args):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def _emit_json(args, payload):
    with _open_out(args) as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _emit_table(args, header, rows):
    """Rows are dicts keyed by header; csv and json forms encode the same values."""
    with _open_out(args) as fh:
        if getattr(args, "format", "csv") == "json":
            json.dump(rows, fh, indent=2)
            fh.write("\n")
        else:
            writer = csv.writer(fh)
            writer.writerow(header)
            for row in rows:
                writer.writerow([row[key] for key in header])


def _select_words(args, lex):
    if getattr(args, "all", False):
        return list(lex.words)
    if getattr(args, "words", None):
        return [w.strip().lower() for w in args.words.split(",") if w.strip()]
    raise DataError("no words selected; pass --all or --words w1,w2")


def cmd_simulate(args) -> int:
    lex, _ = _load_lexicon(args)
    words = _select_words(args, lex)
    reps = args.reps if args.reps is not None else RunConfig().reps
    result = simulate_corpus(words, lex, reps, args.seed,
                             allow_oov=args.allow_oov, threads=args.threads)
    rows = []
    for rep in result.reports:
        row = {"word": rep.word}
        for i, key in enumerate(SIMULATE_HEADER[1:8]):
            row[key] = float(rep.raw.bins[i])
        row["expectation"] = rep.expectation
        row["reps"] = rep.reps
        row["seed"] = args.seed
        rows.append(row)
    _emit_table(args, SIMULATE_HEADER, rows)
    if result.errors:
        for word, message in result.errors:
            print(f"simulate: {word}: {message}", file=sys.stderr)
        return 2
    return 0


def cmd_markov(args) -> int:
    lex, _ = _load_lexicon(args)
    model = build_markov(lex, smoothing=args.smoothing)
    payload = {"smoothing": model.smoothing,
               "first": model.first.tolist(),
               "trans": model.trans.tolist()}
    if args.score:
        scores = {}
        for word in args.score.split(","):
            word = word.strip().lower()
            s = associativity(model, word)
            scores[word] = {"raw": s.raw, "log_raw": s.log_raw}
        payload["scores"] = scores
    _emit_json(args, payload)
    return 0


def cmd_features(args) -> int:
    lex, dict_path = _load_lexicon(args)
    freq = _load_freq(args, lex, used_packaged_dict=args.dict is None)
    markov = build_markov(lex, smoothing=args.smoothing)
    words = _select_words(args, lex)
    rows = []
    for word, fv in zip(words, feature_matrix(words, lex, freq, markov)):
        row = {"word": word}
        for name, value in zip(FEATURE_NAMES, fv.as_array()):
            row[name] = float(value) if name in ("FREQ", "MARKOV", "DISTANCE") else int(value)
        rows.append(row)
    _emit_table(args, FEATURES_HEADER, rows)
    return 0


def cmd_fit_deviation(args) -> int:
    lex, _ = _load_lexicon(args)
    freq = _load_freq(args, lex, used_packaged_dict=args.dict is None)
    observed = load_observed_results(args.results, lex, allow_oov=args.allow_oov)
    markov = build_markov(lex, smoothing=args.smoothing)
    reps = args.reps if args.reps is not None else RunConfig().reps
    sim = simulate_corpus([rec.word for rec in observed], lex, reps, args.seed,
                          allow_oov=args.allow_oov, threads=args.threads)
    if sim.errors:
        raise DataError("could not simulate: " + "; ".join(f"{w}: {m}" for w, m in sim.errors))
    deviation = fit_deviation_model(sim.reports, observed, markov, freq, alpha=args.alpha)
    out = ModelBundle(schema_version=bundle_mod.SCHEMA_VERSION, markov=markov,
                      deviation=deviation, level=None,
                      metadata=new_metadata(lex, args.seed, reps))
    save_bundle(out, args.out)
    print(f"wrote deviation bundle to {args.out} "
          f"(training mse {deviation.training_mse:.4f}, r {deviation.pearson_r:+.4f})",
          file=sys.stderr)
    return 0


def cmd_fit_levels(args) -> int:
    lex, _ = _load_lexicon(args)
    freq = _load_freq(args, lex, used_packaged_dict=args.dict is None)
    observed = load_observed_results(args.results, lex, allow_oov=args.allow_oov)
    if args.bundle:
        base = load_bundle(args.bundle)
        check_dictionary_digest(base, lex)
        markov, deviation, metadata = base.markov, base.deviation, base.metadata
    else:
        markov, deviation = build_markov(lex, smoothing=args.smoothing), None
        metadata = new_metadata(lex, None, None)
    words = [rec.word for rec in observed]
    features = feature_matrix(words, lex, freq, markov)
    level = fit_level_model(observed, features, k=args.k, m=args.m,
                            method=args.cluster_method, linkage=args.linkage)
    out = ModelBundle(schema_version=bundle_mod.SCHEMA_VERSION, markov=markov,
                      deviation=deviation, level=level, metadata=metadata)
    save_bundle(out, args.out)
    print(f"wrote level bundle to {args.out} "
          f"(training accuracy {level.training_accuracy:.3f})", file=sys.stderr)
    return 0


def _bundle_and_lexicon(args):
    bundle = load_bundle(args.bundle)
    lex, _ = _load_lexicon(args)
    check_dictionary_digest(bundle, lex)
    return bundle, lex


def cmd_predict(args) -> int:
    bundle, lex = _bundle_and_lexicon(args)
    if bundle.deviation is None:
        raise DataError("bundle has no deviation model; create one with fit-deviation")
    freq = _load_freq(args, lex, used_packaged_dict=args.dict is None)
    reps = args.reps if args.reps is not None else bundle.metadata.get("reps") or 10000
    seed = args.seed if args.seed is not None else bundle.metadata.get("seed") or 0
    pred = predict_distribution(args.word.strip().lower(), lex, bundle.deviation,
                                bundle.markov, freq, reps, seed, allow_oov=args.allow_oov)
    _emit_json(args, {
        "word": pred.word,
        "raw": pred.raw.bins.tolist(),
        "e_delta_pred": pred.e_delta_pred,
        "corrected": pred.corrected.bins.tolist(),
        "warnings": list(pred.warnings),
    })
    return 0


def cmd_classify(args) -> int:
    bundle, lex = _bundle_and_lexicon(args)
    if bundle.level is None:
        raise DataError("bundle has no level model; create one with fit-levels")
    freq = _load_freq(args, lex, used_packaged_dict=args.dict is None)
    result = classify_word(args.word.strip().lower(), bundle.level, lex, freq, bundle.markov)
    _emit_json(args, {
        "word": result.word,
        "scores": result.scores.tolist(),
        "y": result.y,
        "level": result.level,
    })
    return 0


def cmd_evaluate(args) -> int:
    bundle, lex = _bundle_and_lexicon(args)
    if bundle.deviation is None or bundle.level is None:
        raise DataError("evaluate needs a bundle with both deviation and level models")
    freq = _load_freq(args, lex, used_packaged_dict=args.dict is None)
    observed = load_observed_results(args.results, lex, allow_oov=args.allow_oov)
    reps = args.reps if args.reps is not None else bundle.metadata.get("reps") or 10000
    report = evaluate(observed, lex, bundle.deviation, bundle.markov, freq,
                      reps, args.seed, bundle.level,
                      allow_oov=args.allow_oov, threads=args.threads)
    report["silhouette_by_k"] = {str(key): val for key, val in report["silhouette_by_k"].items()}
    _emit_json(args, report)
    return 0


def cmd_emit_plot_data(args) -> int:
    bundle, lex = _bundle_and_lexicon(args)
    if bundle.deviation is None or bundle.level is None:
        raise DataError("emit-plot-data needs a bundle with both deviation and level models")
    freq = _load_freq(args, lex, used_packaged_dict=args.dict is None)
    observed = load_observed_results(args.results, lex, allow_oov=args.allow_oov)
    reps = args.reps if args.reps is not None else bundle.metadata.get("reps") or 10000
    sim = simulate_corpus([rec.word for rec in observed], lex, reps, args.seed,
                          allow_oov=args.allow_oov, threads=args.threads)
    if sim.errors:
        raise DataError("could not simulate: " + "; ".join(f"{w}: {m}" for w, m in sim.errors))
    raw_by_word = {rep.word: rep.raw for rep in sim.reports}
    obs = deviation_observations(sim.reports, observed)

    from .cluster import hcluster, kmeans_1d
    from .pipeline import apply_correction

    rows = []
    for rec in observed:
        raw = raw_by_word[rec.word]
        delta_pred = bundle.deviation.predict_delta(rec.word, bundle.markov, freq)
        corrected = apply_correction(raw, delta_pred)[0]
        for series, dist in (("actual", rec.dist), ("raw", raw), ("corrected", corrected)):
            for i in range(7):
                rows.append({"figure": "distribution_comparison", "word": rec.word,
                             "series": series, "x": i + 1, "y": float(dist.bins[i])})
    for o in obs:
        rows.append({"figure": "associativity_deviation", "word": o.word, "series": "points",
                     "x": associativity(bundle.markov, o.word).log_raw, "y": o.e_delta})
    expectations = np.array([rec.dist.expectation for rec in observed])
    level = bundle.level
    if level.cluster_method == "kmeans":
        labels = kmeans_1d(expectations, level.cluster_k)
    else:
        labels = hcluster(expectations, level.cluster_k, level.cluster_linkage)
    for rec, label in zip(observed, labels):
        rows.append({"figure": "cluster_expectation", "word": rec.word, "series": "points",
                     "x": int(label), "y": rec.dist.expectation})
    _emit_table(args, PLOT_HEADER, rows)
    return 0


def _add_common(sub, *, dict_required=False, freq=True, results=False,
                sim=False, out_required=False):
    sub.add_argument("--dict", required=dict_required, default=None,
                     help="dictionary file, one five-letter word per line "
                          "(default: the packaged word list)")
    if freq:
        sub.add_argument("--freq", default=None,
                         help="CSV word,freq_per_million (default: packaged table "
                              "when using the packaged dictionary)")
    if results:
        sub.add_argument("--results", required=True,
                         help="observed daily results CSV")
    if sim:
        sub.add_argument("--reps", type=int, default=None, help="games per word")
        sub.add_argument("--seed", type=int, default=0, help="master random seed")
        sub.add_argument("--threads", type=int, default=None,
                         help="worker threads for simulation (default: all cores)")
    sub.add_argument("--allow-oov", action="store_true", dest="allow_oov",
                     help="admit words missing from the dictionary")
    sub.add_argument("--out", required=out_required, default=None,
                     help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wordle-difficulty",
                     description="Predict guess-count distributions and difficulty "
                                 "levels for five-letter puzzle words.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub = commands.add_parser("simulate", help="Monte Carlo raw distributions")
    _add_common(sub, dict_required=True, freq=False, sim=True)
    sub.add_argument("--all", action="store_true", help="simulate every dictionary word")
    sub.add_argument("--words", default=None, help="comma-separated solution words")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.set_defaults(func=cmd_simulate)

    sub = commands.add_parser("markov", help="letter-chain model and associativity scores")
    _add_common(sub, dict_required=True, freq=False)
    sub.add_argument("--smoothing", type=float, default=0.0, help="add-k smoothing constant")
    sub.add_argument("--score", default=None, help="comma-separated words to score")
    sub.set_defaults(func=cmd_markov)

    sub = commands.add_parser("features", help="lexical feature table")
    _add_common(sub, dict_required=True)
    sub.add_argument("--all", action="store_true", help="all dictionary words")
    sub.add_argument("--words", default=None, help="comma-separated words")
    sub.add_argument("--smoothing", type=float, default=0.0)
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.set_defaults(func=cmd_features)

    sub = commands.add_parser("fit-deviation", help="fit the expectation-deviation regression")
    _add_common(sub, dict_required=True, results=True, sim=True, out_required=True)
    sub.add_argument("--alpha", type=float, default=0.01, help="l1 penalty")
    sub.add_argument("--smoothing", type=float, default=0.0)
    sub.set_defaults(func=cmd_fit_deviation)

    sub = commands.add_parser("fit-levels", help="fit the difficulty-level classifier")
    _add_common(sub, dict_required=True, results=True, out_required=True)
    sub.add_argument("--k", type=int, default=4, help="difficulty level count")
    sub.add_argument("--m", type=int, default=4, help="retained factor count")
    sub.add_argument("--cluster-method", choices=("hierarchical", "kmeans"),
                     default="hierarchical", dest="cluster_method")
    sub.add_argument("--linkage", choices=("ward", "average"), default="ward")
    sub.add_argument("--smoothing", type=float, default=0.0)
    sub.add_argument("--bundle", default=None, help="base bundle to extend")
    sub.set_defaults(func=cmd_fit_levels)

    sub = commands.add_parser("predict", help="predict one word's distribution")
    sub.add_argument("--word", required=True)
    sub.add_argument("--bundle", required=True,
                     help="bundle path, or 'reference'/'paper' for the packaged model")
    _add_common(sub, sim=True)
    sub.set_defaults(func=cmd_predict)

    sub = commands.add_parser("classify", help="classify one word's difficulty level")
    sub.add_argument("--word", required=True)
    sub.add_argument("--bundle", required=True,
                     help="bundle path, or 'reference'/'paper' for the packaged model")
    _add_common(sub)
    sub.set_defaults(func=cmd_classify)

    sub = commands.add_parser("evaluate", help="whole-dataset evaluation report")
    sub.add_argument("--bundle", required=True)
    _add_common(sub, dict_required=True, results=True, sim=True)
    sub.set_defaults(func=cmd_evaluate)

    sub = commands.add_parser("emit-plot-data", help="long-format CSV behind the figures")
    sub.add_argument("--bundle", required=True)
    _add_common(sub, dict_required=True, results=True, sim=True, out_required=True)
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.set_defaults(func=cmd_emit_plot_data)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry_point():
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entry_point()
