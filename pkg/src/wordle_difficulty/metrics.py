"""Evaluation metrics: distribution MSE, accuracy, macro AUC, Pearson r."""

from __future__ import annotations

import numpy as np

from .distribution import BIN_COUNT
from .errors import DataError


def distribution_mse(pred, actual) -> float:
    """Mean squared per-bin error on the 0-100 percent scale."""
    diff = np.asarray(pred.bins) - np.asarray(actual.bins)
    return float(diff @ diff) / BIN_COUNT


def average_distribution_mse(preds, actuals) -> float:
    preds = list(preds)
    actuals = list(actuals)
    if len(preds) != len(actuals):
        raise DataError(f"length mismatch: {len(preds)} predictions vs {len(actuals)} actuals")
    if not preds:
        raise DataError("no distributions to compare")
    return float(np.mean([distribution_mse(p, a) for p, a in zip(preds, actuals)]))


def accuracy(actual_labels, pred_labels) -> float:
    actual = np.asarray(actual_labels)
    pred = np.asarray(pred_labels)
    if actual.shape != pred.shape:
        raise DataError(f"length mismatch: {actual.shape} vs {pred.shape}")
    if actual.size == 0:
        raise DataError("no labels to compare")
    return float(np.mean(actual == pred))


def _average_ranks(scores):
    order = np.argsort(scores, kind="stable")
    ranks = np.empty(len(scores), dtype=np.float64)
    i = 0
    while i < len(scores):
        j = i
        while j + 1 < len(scores) and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def auc_binary(scores, positives) -> float:
    """Rank-based AUC with ties credited 0.5; needs both classes present."""
    scores = np.asarray(scores, dtype=np.float64)
    positives = np.asarray(positives, dtype=bool)
    n_pos = int(positives.sum())
    n_neg = int((~positives).sum())
    if n_pos == 0 or n_neg == 0:
        raise DataError("AUC needs both positive and negative examples")
    ranks = _average_ranks(scores)
    return float((ranks[positives].sum() - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg))


def macro_ovr_auc(actual_labels, class_scores=None, pred_labels=None) -> float:
    """Macro one-vs-rest AUC over the levels present in the actual labels.

    class_scores is an (n, k) score matrix (column j scores level j+1);
    without it, predicted labels are used as one-hot scores, which makes
    perfect agreement score exactly 1. Levels without both classes are
    skipped.
    """
    actual = np.asarray(actual_labels, dtype=np.int64)
    if class_scores is None:
        if pred_labels is None:
            raise DataError("need class_scores or pred_labels")
        pred = np.asarray(pred_labels, dtype=np.int64)
        k = int(max(actual.max(), pred.max()))
        class_scores = np.zeros((len(pred), k))
        class_scores[np.arange(len(pred)), pred - 1] = 1.0
    class_scores = np.asarray(class_scores, dtype=np.float64)
    if class_scores.shape[0] != actual.shape[0]:
        raise DataError("class_scores and labels are misaligned")
    aucs = []
    for level in np.unique(actual):
        positives = actual == level
        if positives.all() or not positives.any():
            continue
        aucs.append(auc_binary(class_scores[:, level - 1], positives))
    if not aucs:
        raise DataError("no level has both positive and negative examples")
    return float(np.mean(aucs))


def pearson_r(x, y) -> float:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise DataError("paired score lists must be aligned 1-D arrays")
    if x.size < 2:
        raise DataError("need at least 2 pairs")
    xd = x - x.mean()
    yd = y - y.mean()
    denom = np.sqrt((xd @ xd) * (yd @ yd))
    if denom == 0:
        raise DataError("zero variance in a score list")
    return float(xd @ yd / denom)


def metrics_report(pred_dists, actual_dists, pred_labels, actual_labels,
                   scores=None, class_scores=None) -> dict:
    """Bundle the standard comparisons into one report dict."""
    report = {
        "distribution_mse": average_distribution_mse(pred_dists, actual_dists),
        "accuracy": accuracy(actual_labels, pred_labels),
        "macro_auc": macro_ovr_auc(actual_labels, class_scores=class_scores,
                                   pred_labels=pred_labels),
    }
    if scores is not None:
        x, y = scores
        report["pearson_r"] = pearson_r(x, y)
    return report
