"""Model bundle persistence: everything needed to predict and classify
without refitting, serialized as JSON at full round-trip precision.

The package ships a pretrained reference bundle (aliases "reference" and
"paper") whose factor score coefficients, level weights, and cutpoints are
fixed published values; its feature standardization and letter-chain model
come from the bundled dictionary and demo frequency table.
"""

from __future__ import annotations

import datetime
import json
import logging
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import DataError
from .factor import FactorModel
from .features import FEATURE_NAMES, Standardization
from .lasso import LassoModel
from .markov import MarkovModel
from .ologit import OrdLogitModel
from .pipeline import DeviationModel, LevelModel
from .words import ALPHABET_SIZE, Lexicon

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
BUNDLE_ALIASES = ("reference", "paper")

# Pretrained reference difficulty classifier: factor score coefficients per
# feature (rows follow FEATURE_NAMES), level weights, and level cutpoints.
REFERENCE_SCORE_COEF = (
    # F1       F2      F3      F4
    (-0.003, -0.026, 0.035, 1.013),   # FREQ
    (0.196, 0.135, 0.062, 0.024),     # Orth
    (0.078, 0.578, -0.062, -0.015),   # N1_C
    (0.150, 0.299, 0.250, -0.038),    # N2_C
    (0.215, 0.124, 0.145, -0.027),    # N3_C
    (-0.070, 0.426, 0.460, 0.038),    # UN1_C
    (0.025, 0.144, 0.717, -0.018),    # UN2_C
    (0.094, -0.137, 0.585, 0.107),    # UN3_C
    (0.090, 0.357, 0.478, 0.019),     # MARKOV
    (-0.073, -0.560, -0.146, -0.062), # DISTANCE
)
REFERENCE_BETA = (1.343, 0.823, 0.732, 0.687)
REFERENCE_CUTPOINTS = (-2.20, -0.32, 2.00)


@dataclass(frozen=True)
class ModelBundle:
    schema_version: int
    markov: MarkovModel
    deviation: DeviationModel | None
    level: LevelModel | None
    metadata: dict


def new_metadata(lex: Lexicon, seed: int | None, reps: int | None) -> dict:
    return {
        "dictionary_sha256": lex.digest(),
        "seed": None if seed is None else int(seed),
        "reps": None if reps is None else int(reps),
        "created": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def _array(values, shape, what) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != shape:
        raise DataError(f"{what}: expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{what}: non-finite entries")
    arr.flags.writeable = False
    return arr


def bundle_to_dict(bundle: ModelBundle) -> dict:
    out = {
        "schema_version": bundle.schema_version,
        "metadata": bundle.metadata,
        "markov": {
            "smoothing": bundle.markov.smoothing,
            "first": bundle.markov.first.tolist(),
            "trans": bundle.markov.trans.tolist(),
        },
        "deviation": None,
        "level": None,
    }
    dev = bundle.deviation
    if dev is not None:
        out["deviation"] = {
            "alpha": dev.alpha,
            "intercept": dev.lasso.intercept,
            "coef": dev.lasso.coef.tolist(),
            "feature_mean": dev.feature_mean.tolist(),
            "feature_sd": dev.feature_sd.tolist(),
            "training_mse": dev.training_mse,
            "pearson_r": dev.pearson_r,
        }
    lvl = bundle.level
    if lvl is not None:
        out["level"] = {
            "provenance": lvl.provenance,
            "standardization": {
                "mean": lvl.standardization.mean.tolist(),
                "sd": lvl.standardization.sd.tolist(),
            },
            "factors": {
                "m": lvl.factors.m,
                "score_coef": lvl.factors.score_coef.tolist(),
                "loadings": None if lvl.factors.loadings is None
                            else lvl.factors.loadings.tolist(),
                "eigenvalues": None if lvl.factors.eigenvalues is None
                               else lvl.factors.eigenvalues.tolist(),
            },
            "ologit": {
                "k": lvl.ologit.k,
                "beta": lvl.ologit.beta.tolist(),
                "cutpoints": lvl.ologit.cutpoints.tolist(),
                "log_likelihood": lvl.ologit.log_likelihood,
                "aic": lvl.ologit.aic,
                "bic": lvl.ologit.bic,
            },
            "cluster": {
                "k": lvl.cluster_k,
                "method": lvl.cluster_method,
                "linkage": lvl.cluster_linkage,
            },
            "silhouette_by_k": None if lvl.silhouette_by_k is None
                               else {str(key): val for key, val in lvl.silhouette_by_k.items()},
            "training_accuracy": lvl.training_accuracy,
        }
    return out


def _markov_from_dict(data) -> MarkovModel:
    first = _array(data["first"], (ALPHABET_SIZE,), "markov.first")
    trans = _array(data["trans"], (ALPHABET_SIZE, ALPHABET_SIZE), "markov.trans")
    if np.any(first < 0) or np.any(trans < 0):
        raise DataError("markov probabilities must be non-negative")
    if abs(first.sum() - 1.0) > 1e-9:
        raise DataError(f"markov.first sums to {first.sum()!r}, expected 1")
    row_sums = trans.sum(axis=1)
    bad = np.flatnonzero(~((np.abs(row_sums - 1.0) <= 1e-9) | (row_sums == 0.0)))
    if bad.size:
        raise DataError(f"markov.trans rows {bad.tolist()} sum to neither 1 nor 0")
    return MarkovModel(first=first, trans=trans, smoothing=float(data.get("smoothing", 0.0)))


def _deviation_from_dict(data) -> DeviationModel:
    coef = _array(data["coef"], (2,), "deviation.coef")
    mean = _array(data["feature_mean"], (2,), "deviation.feature_mean")
    sd = _array(data["feature_sd"], (2,), "deviation.feature_sd")
    if np.any(sd <= 0):
        raise DataError("deviation.feature_sd entries must be positive")
    alpha = float(data["alpha"])
    return DeviationModel(
        lasso=LassoModel(intercept=float(data["intercept"]), coef=coef, alpha=alpha),
        feature_mean=mean, feature_sd=sd, alpha=alpha,
        training_mse=data.get("training_mse"), pearson_r=data.get("pearson_r"),
    )


def _level_from_dict(data) -> LevelModel:
    p = len(FEATURE_NAMES)
    std = data["standardization"]
    mean = _array(std["mean"], (p,), "level.standardization.mean")
    sd = _array(std["sd"], (p,), "level.standardization.sd")
    if np.any(sd <= 0):
        raise DataError("level.standardization.sd entries must be positive")

    fac = data["factors"]
    m = int(fac["m"])
    if not 1 <= m <= p:
        raise DataError(f"factor count {m} outside [1, {p}]")
    score_coef = _array(fac["score_coef"], (p, m), "level.factors.score_coef")
    loadings = None
    if fac.get("loadings") is not None:
        loadings = _array(fac["loadings"], (p, m), "level.factors.loadings")
    eigenvalues = None
    if fac.get("eigenvalues") is not None:
        eigenvalues = np.asarray(fac["eigenvalues"], dtype=np.float64)
        if np.any(np.diff(eigenvalues) > 1e-12):
            raise DataError("level.factors.eigenvalues must be non-increasing")
        eigenvalues.flags.writeable = False

    olg = data["ologit"]
    k = int(olg["k"])
    if k < 2:
        raise DataError("level.ologit.k must be >= 2")
    beta = _array(olg["beta"], (m,), "level.ologit.beta")
    cutpoints = _array(olg["cutpoints"], (k - 1,), "level.ologit.cutpoints")
    if np.any(np.diff(cutpoints) <= 0):
        raise DataError("level.ologit.cutpoints must be strictly increasing")

    clu = data["cluster"]
    sil = data.get("silhouette_by_k")
    return LevelModel(
        standardization=Standardization(mean=mean, sd=sd),
        factors=FactorModel(score_coef=score_coef, m=m, loadings=loadings,
                            eigenvalues=eigenvalues),
        ologit=OrdLogitModel(beta=beta, cutpoints=cutpoints, k=k,
                             log_likelihood=olg.get("log_likelihood"),
                             aic=olg.get("aic"), bic=olg.get("bic")),
        cluster_k=int(clu["k"]), cluster_method=clu.get("method", "hierarchical"),
        cluster_linkage=clu.get("linkage", "ward"),
        provenance=data.get("provenance", "fitted"),
        silhouette_by_k=None if sil is None else {int(key): val for key, val in sil.items()},
        training_accuracy=data.get("training_accuracy"),
    )


def bundle_from_dict(data: dict) -> ModelBundle:
    try:
        version = int(data["schema_version"])
    except (KeyError, TypeError, ValueError):
        raise DataError("bundle has no usable schema_version") from None
    if version > SCHEMA_VERSION:
        raise DataError(f"bundle schema_version {version} is newer than the supported "
                        f"{SCHEMA_VERSION}; upgrade the package to read it")
    try:
        markov = _markov_from_dict(data["markov"])
        deviation = None if data.get("deviation") is None else _deviation_from_dict(data["deviation"])
        level = None if data.get("level") is None else _level_from_dict(data["level"])
    except KeyError as exc:
        raise DataError(f"bundle is missing field {exc}") from None
    return ModelBundle(schema_version=version, markov=markov, deviation=deviation,
                       level=level, metadata=dict(data.get("metadata", {})))


def save_bundle(bundle: ModelBundle, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(bundle_to_dict(bundle), fh, indent=1)
        fh.write("\n")


def reference_bundle_path():
    return resources.files("wordle_difficulty").joinpath("data/reference_bundle.json")


def packaged_dictionary_path():
    return resources.files("wordle_difficulty").joinpath("data/dictionary.txt")


def packaged_frequencies_path():
    return resources.files("wordle_difficulty").joinpath("data/frequencies.csv")


def load_bundle(path) -> ModelBundle:
    """Read a bundle from a path, or from the packaged reference model when
    given one of the aliases in BUNDLE_ALIASES."""
    if str(path) in BUNDLE_ALIASES:
        with reference_bundle_path().open(encoding="utf-8") as fh:
            return bundle_from_dict(json.load(fh))
    with open(path, encoding="utf-8") as fh:
        return bundle_from_dict(json.load(fh))


def check_dictionary_digest(bundle: ModelBundle, lex: Lexicon) -> str | None:
    """Warn (and return a message) when the lexicon differs from the one the
    bundle was built against."""
    recorded = bundle.metadata.get("dictionary_sha256")
    if recorded and recorded != lex.digest():
        message = ("dictionary digest mismatch: bundle was built against "
                   f"{recorded[:12]}..., current dictionary is {lex.digest()[:12]}...")
        log.warning("%s", message)
        return message
    return None
