"""End-to-end procedures: distribution prediction and level classification.

Deviation sign convention: e_delta = E(observed) - E(simulated). Under this
convention the corrected distribution raw + delta shifts its expectation BY
e_delta, landing on the observed expectation when the true deviation is
supplied. The evaluation report states the convention and prints the
associativity/deviation correlation under both signs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .cluster import hcluster, kmeans_1d, silhouette
from .distribution import GuessDistribution
from .errors import DataError
from .factor import FactorModel, factor_fit, factor_scores
from .features import FeatureVector, Standardization, feature_vector, standardize
from .lasso import LassoModel, lasso_fit
from .markov import MarkovModel, associativity
from .metrics import accuracy, average_distribution_mse, macro_ovr_auc, pearson_r
from .ologit import OrdLogitModel, class_probabilities, ologit_classify, ologit_fit
from .qp import qp_correct
from .simulate import simulate_corpus, simulate_word
from .words import FrequencyTable, Lexicon

log = logging.getLogger(__name__)

DEVIATION_SIGN = "observed_minus_simulated"


@dataclass(frozen=True)
class DeviationObservation:
    word: str
    e_raw: float
    e_actual: float
    e_delta: float  # e_actual - e_raw


@dataclass(frozen=True)
class DeviationModel:
    """Lasso over two standardized ease-of-recall features:
    log associativity and log1p word frequency, in that order."""

    lasso: LassoModel
    feature_mean: np.ndarray  # (2,)
    feature_sd: np.ndarray    # (2,)
    alpha: float
    training_mse: float | None = None
    pearson_r: float | None = None  # corr(log associativity, e_delta)

    def features_for(self, word: str, markov: MarkovModel, freq: FrequencyTable) -> np.ndarray:
        raw = np.array([associativity(markov, word).log_raw, np.log1p(freq.get(word))])
        return (raw - self.feature_mean) / self.feature_sd

    def predict_delta(self, word: str, markov: MarkovModel, freq: FrequencyTable) -> float:
        return float(self.lasso.predict(self.features_for(word, markov, freq))[0])


@dataclass(frozen=True)
class LevelModel:
    standardization: Standardization
    factors: FactorModel
    ologit: OrdLogitModel
    cluster_k: int
    cluster_method: str = "hierarchical"
    cluster_linkage: str = "ward"
    provenance: str = "fitted"
    silhouette_by_k: dict | None = None
    training_accuracy: float | None = None


@dataclass(frozen=True)
class Prediction:
    word: str
    raw: GuessDistribution
    e_delta_pred: float
    corrected: GuessDistribution
    warnings: tuple = ()


@dataclass(frozen=True)
class Classification:
    word: str
    scores: np.ndarray
    y: float
    level: int


def deviation_observations(reports, observed) -> list[DeviationObservation]:
    """Pair simulated and observed expectations; word sets must coincide."""
    by_word = {r.word: r for r in reports}
    obs_words = [o.word for o in observed]
    missing = sorted(set(obs_words) - set(by_word))
    extra = sorted(set(by_word) - set(obs_words))
    if missing or extra:
        raise DataError("simulated and observed word sets differ; "
                        f"observed-only: {missing[:10]}, simulated-only: {extra[:10]}")
    out = []
    for rec in observed:
        e_raw = by_word[rec.word].expectation
        e_actual = rec.dist.expectation
        out.append(DeviationObservation(word=rec.word, e_raw=e_raw, e_actual=e_actual,
                                        e_delta=e_actual - e_raw))
    return out


def _deviation_features(words, markov, freq) -> np.ndarray:
    return np.array([[associativity(markov, w).log_raw, np.log1p(freq.get(w))]
                     for w in words])


def fit_deviation_model(reports, observed, markov: MarkovModel, freq: FrequencyTable,
                        alpha: float = 0.01) -> DeviationModel:
    obs = deviation_observations(reports, observed)
    raw_features = _deviation_features([o.word for o in obs], markov, freq)
    mean = raw_features.mean(axis=0)
    sd = raw_features.std(axis=0, ddof=1)
    for name, value in zip(("log associativity", "log1p frequency"), sd):
        if value == 0:
            raise DataError(f"deviation feature {name!r} has zero variance")
    z = (raw_features - mean) / sd
    e_delta = np.array([o.e_delta for o in obs])
    model = lasso_fit(z, e_delta, alpha)
    fitted = model.predict(z)
    mean.flags.writeable = False
    sd.flags.writeable = False
    return DeviationModel(
        lasso=model, feature_mean=mean, feature_sd=sd, alpha=float(alpha),
        training_mse=float(np.mean((fitted - e_delta) ** 2)),
        pearson_r=pearson_r(raw_features[:, 0], e_delta),
    )


def apply_correction(raw: GuessDistribution, e_delta_pred: float):
    """QP-correct a raw distribution toward a predicted expectation shift."""
    solution = qp_correct(raw, 100.0 * e_delta_pred)
    corrected = GuessDistribution(np.asarray(raw.bins) + solution.delta).renormalized()
    warnings = ()
    if solution.clamped:
        warnings = ({"code": "qp_target_clamped",
                     "message": f"requested shift {solution.target / 100.0:+.6f} clamped to "
                                f"{solution.applied_target / 100.0:+.6f}"},)
    return corrected, solution, warnings


def predict_distribution(word: str, lex: Lexicon, deviation: DeviationModel,
                         markov: MarkovModel, freq: FrequencyTable,
                         reps: int, seed: int, allow_oov: bool = False) -> Prediction:
    report = simulate_word(word, lex, reps, seed, allow_oov=allow_oov)
    e_delta_pred = deviation.predict_delta(word, markov, freq)
    corrected, _, warnings = apply_correction(report.raw, e_delta_pred)
    return Prediction(word=word, raw=report.raw, e_delta_pred=e_delta_pred,
                      corrected=corrected, warnings=warnings)


def _cluster_labels(expectations, k, method, linkage):
    if method == "kmeans":
        return kmeans_1d(expectations, k)
    return hcluster(expectations, k, linkage)


def fit_level_model(observed, features: list[FeatureVector], k: int = 4, m: int = 4,
                    method: str = "hierarchical", linkage: str = "ward") -> LevelModel:
    """Cluster observed expectations into difficulty levels, extract factors
    from the lexical features, and regress levels on the factor scores."""
    if len(observed) != len(features):
        raise DataError(f"{len(observed)} observed rows vs {len(features)} feature rows")
    expectations = np.array([rec.dist.expectation for rec in observed])
    labels = _cluster_labels(expectations, k, method, linkage)
    z, standardization = standardize(features)
    factors = factor_fit(z, m)
    scores = factor_scores(factors, z)
    ologit = ologit_fit(scores, labels)
    predicted = np.array([ologit_classify(ologit, row)[0] for row in scores])
    sil = {}
    for k_try in range(2, 9):
        if k_try <= len(expectations):
            sil[k_try] = silhouette(expectations, _cluster_labels(expectations, k_try,
                                                                  method, linkage))
    return LevelModel(standardization=standardization, factors=factors, ologit=ologit,
                      cluster_k=k, cluster_method=method, cluster_linkage=linkage,
                      provenance="fitted", silhouette_by_k=sil,
                      training_accuracy=accuracy(labels, predicted))


def classify_word(word: str, model: LevelModel, lex: Lexicon, freq: FrequencyTable,
                  markov: MarkovModel) -> Classification:
    fv = feature_vector(word, lex, freq, markov)
    z = model.standardization.transform(fv.as_array()[None, :])[0]
    scores = factor_scores(model.factors, z)
    level, y = ologit_classify(model.ologit, scores)
    return Classification(word=word, scores=scores, y=y, level=level)


def evaluate(observed, lex: Lexicon, deviation: DeviationModel, markov: MarkovModel,
             freq: FrequencyTable, reps: int, seed: int, level_model: LevelModel,
             allow_oov: bool = False, threads: int | None = None) -> dict:
    """Whole-dataset report: the three distribution MSEs (raw, corrected with
    the predicted shift, corrected with the true shift), deviation-model
    residuals, and level-model agreement on this data."""
    observed = list(observed)
    sim = simulate_corpus([rec.word for rec in observed], lex, reps, seed,
                          allow_oov=allow_oov, threads=threads)
    if sim.errors:
        failed = {w for w, _ in sim.errors}
        observed = [rec for rec in observed if rec.word not in failed]
        log.warning("skipped %d words that could not be simulated", len(failed))
    reports = {r.word: r for r in sim.reports}

    actual_dists = [rec.dist for rec in observed]
    raw_dists = [reports[rec.word].raw for rec in observed]
    obs = deviation_observations(sim.reports, observed)
    e_delta = np.array([o.e_delta for o in obs])
    log_assoc = np.array([associativity(markov, o.word).log_raw for o in obs])

    predicted_delta = np.array([deviation.predict_delta(o.word, markov, freq) for o in obs])
    clamped = 0
    pred_corrected = []
    oracle_corrected = []
    for raw, dp, dt in zip(raw_dists, predicted_delta, e_delta):
        corrected, solution, _ = apply_correction(raw, dp)
        clamped += int(solution.clamped)
        pred_corrected.append(corrected)
        oracle_corrected.append(apply_correction(raw, dt)[0])

    expectations = np.array([rec.dist.expectation for rec in observed])
    labels = _cluster_labels(expectations, level_model.cluster_k,
                             level_model.cluster_method, level_model.cluster_linkage)
    classifications = [classify_word(rec.word, level_model, lex, freq, markov)
                       for rec in observed]
    pred_labels = np.array([c.level for c in classifications])
    score_rows = np.stack([c.scores for c in classifications])
    probs = class_probabilities(level_model.ologit, score_rows)

    r = pearson_r(log_assoc, e_delta)
    sil = {k_try: silhouette(expectations,
                             _cluster_labels(expectations, k_try, level_model.cluster_method,
                                             level_model.cluster_linkage))
           for k_try in range(2, 9) if k_try <= len(expectations)}
    return {
        "n_words": len(observed),
        "skipped_words": sorted(w for w, _ in sim.errors),
        "deviation_sign": DEVIATION_SIGN,
        "mse_raw": average_distribution_mse(raw_dists, actual_dists),
        "mse_pred_corrected": average_distribution_mse(pred_corrected, actual_dists),
        "mse_oracle_corrected": average_distribution_mse(oracle_corrected, actual_dists),
        "lasso_mse": float(np.mean((predicted_delta - e_delta) ** 2)),
        "pearson_r_both_signs": {"observed_minus_simulated": r,
                                 "simulated_minus_observed": -r},
        "accuracy": accuracy(labels, pred_labels),
        "macro_auc": macro_ovr_auc(labels, class_scores=probs),
        "aic": level_model.ologit.aic,
        "bic": level_model.ologit.bic,
        "silhouette_by_k": sil,
        "qp_clamped": clamped,
    }
