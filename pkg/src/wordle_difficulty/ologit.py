"""Proportional-odds ordinal regression fitted by Newton iterations.

The model is P(level <= j) = logistic(cut_j - beta . f) with strictly
increasing cutpoints and no separate intercept. Newton steps use the
analytic gradient and Hessian of the log-likelihood, with step halving to
keep the cutpoints ordered and the likelihood non-decreasing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, NumericalError

_BETA_EXPLOSION = 1e4


@dataclass(frozen=True)
class OrdLogitModel:
    beta: np.ndarray        # (m,)
    cutpoints: np.ndarray   # (k-1,), strictly increasing
    k: int
    log_likelihood: float | None = None
    aic: float | None = None
    bic: float | None = None
    n_iter: int | None = None


def _sigmoid(x):
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def _prepare(F, labels):
    F = np.asarray(F, dtype=np.float64)
    labels = np.asarray(labels)
    if F.ndim != 2 or labels.ndim != 1 or F.shape[0] != labels.shape[0]:
        raise DataError(f"incompatible shapes F{F.shape}, labels{labels.shape}")
    if not np.all(np.isfinite(F)):
        raise DataError("non-finite factor scores")
    labels = labels.astype(np.int64)
    k = int(labels.max())
    if k < 2:
        raise DataError("need at least 2 levels")
    present = np.unique(labels)
    expected = np.arange(1, k + 1)
    if not np.array_equal(present, expected):
        missing = sorted(set(expected.tolist()) - set(present.tolist()))
        raise DataError(f"levels {missing} are absent from the labels")
    return F, labels, k


def _loglik_parts(beta, cuts, F, labels, k):
    """Per-observation probability p plus the logistic pieces at both cuts."""
    eta = F @ beta
    hi = labels - 1      # index of upper cutpoint, == k-1 means +inf
    lo = labels - 2      # index of lower cutpoint, == -1 means -inf
    sig_hi = np.ones(len(labels))
    phi_hi = np.zeros(len(labels))
    has_hi = hi < k - 1
    a = cuts[hi[has_hi]] - eta[has_hi]
    sig_hi[has_hi] = _sigmoid(a)
    phi_hi[has_hi] = sig_hi[has_hi] * (1.0 - sig_hi[has_hi])
    sig_lo = np.zeros(len(labels))
    phi_lo = np.zeros(len(labels))
    has_lo = lo >= 0
    b = cuts[lo[has_lo]] - eta[has_lo]
    sig_lo[has_lo] = _sigmoid(b)
    phi_lo[has_lo] = sig_lo[has_lo] * (1.0 - sig_lo[has_lo])
    p = sig_hi - sig_lo
    return p, sig_hi, phi_hi, sig_lo, phi_lo, has_hi, has_lo, hi, lo


def _gradient_hessian(beta, cuts, F, labels, k):
    n, m = F.shape
    q = m + k - 1
    p, sig_hi, phi_hi, sig_lo, phi_lo, has_hi, has_lo, hi, lo = _loglik_parts(
        beta, cuts, F, labels, k)
    if np.any(p <= 0):
        return None, None, None

    ga = np.zeros((n, q))
    gb = np.zeros((n, q))
    ga[:, :m] = -F
    gb[:, :m] = -F
    rows = np.arange(n)
    ga[rows[has_hi], m + hi[has_hi]] = 1.0
    gb[rows[has_lo], m + lo[has_lo]] = 1.0

    dla = phi_hi / p
    dlb = -phi_lo / p
    grad = ga.T @ dla + gb.T @ dlb

    dphi_hi = phi_hi * (1.0 - 2.0 * sig_hi)
    dphi_lo = phi_lo * (1.0 - 2.0 * sig_lo)
    laa = dphi_hi / p - (phi_hi / p) ** 2
    lbb = -dphi_lo / p - (phi_lo / p) ** 2
    lab = phi_hi * phi_lo / (p * p)
    hess = (ga.T @ (laa[:, None] * ga) + gb.T @ (lbb[:, None] * gb)
            + ga.T @ (lab[:, None] * gb) + gb.T @ (lab[:, None] * ga))
    return float(np.log(p).sum()), grad, hess


def _loglik(beta, cuts, F, labels, k):
    p = _loglik_parts(beta, cuts, F, labels, k)[0]
    if np.any(p <= 0):
        return -np.inf
    return float(np.log(p).sum())


def ologit_fit(F, labels, tol: float = 1e-8, max_iter: int = 100) -> OrdLogitModel:
    F, labels, k = _prepare(F, labels)
    n, m = F.shape

    cumprop = np.cumsum(np.bincount(labels, minlength=k + 1)[1:k]) / n
    cuts = np.log(cumprop / (1.0 - cumprop))
    beta = np.zeros(m)
    trace = []

    ll = _loglik(beta, cuts, F, labels, k)
    for iteration in range(1, max_iter + 1):
        value, grad, hess = _gradient_hessian(beta, cuts, F, labels, k)
        if value is None:
            raise NumericalError("likelihood became degenerate; trace: " + _fmt(trace))
        gnorm = float(np.max(np.abs(grad)))
        trace.append((iteration, -value, gnorm))
        if gnorm < tol:
            if value > -1e-3:
                # zero-entropy fit: the likelihood supremum sits at unbounded
                # coefficients, so the data are (quasi-)separated
                raise NumericalError("perfect separation: likelihood reached "
                                     f"{value:.3e}; trace: " + _fmt(trace))
            return _package(beta, cuts, k, value, n, m, iteration)
        if np.max(np.abs(beta)) > _BETA_EXPLOSION:
            raise NumericalError("coefficients diverged (separation suspected); trace: "
                                 + _fmt(trace))
        try:
            direction = np.linalg.solve(-hess, grad)
        except np.linalg.LinAlgError:
            direction = np.linalg.lstsq(-hess, grad, rcond=None)[0]
        step = 1.0
        for _ in range(60):
            nb = beta + step * direction[:m]
            nc = cuts + step * direction[m:]
            if np.all(np.diff(nc) > 0):
                new_ll = _loglik(nb, nc, F, labels, k)
                if new_ll >= ll - 1e-12:
                    beta, cuts, ll = nb, nc, new_ll
                    break
            step *= 0.5
        else:
            raise NumericalError("step halving failed to improve the likelihood; trace: "
                                 + _fmt(trace))
    raise NumericalError(f"no convergence after {max_iter} Newton iterations; trace: "
                         + _fmt(trace))


def _fmt(trace):
    tail = trace[-5:]
    return "; ".join(f"iter {i}: nll={v:.6f}, grad={g:.3e}" for i, v, g in tail)


def _package(beta, cuts, k, ll, n, m, iteration) -> OrdLogitModel:
    params = m + k - 1
    beta = beta.copy()
    cuts = cuts.copy()
    beta.flags.writeable = False
    cuts.flags.writeable = False
    return OrdLogitModel(beta=beta, cutpoints=cuts, k=k, log_likelihood=ll,
                         aic=2.0 * params - 2.0 * ll,
                         bic=params * np.log(n) - 2.0 * ll,
                         n_iter=iteration)


def linear_score(model: OrdLogitModel, f) -> float:
    return float(np.asarray(f, dtype=np.float64) @ model.beta)


def ologit_classify(model: OrdLogitModel, f) -> tuple[int, float]:
    """Level for one factor-score vector; ties on a cutpoint go to the lower
    level (cut j is the inclusive upper edge of level j)."""
    y = linear_score(model, f)
    level = int(np.searchsorted(model.cutpoints, y, side="left")) + 1
    return level, y


def class_probabilities(model: OrdLogitModel, F) -> np.ndarray:
    """(n, k) matrix of level probabilities."""
    F = np.atleast_2d(np.asarray(F, dtype=np.float64))
    eta = F @ model.beta
    cum = _sigmoid(model.cutpoints[None, :] - eta[:, None])
    ones = np.ones((F.shape[0], 1))
    zeros = np.zeros((F.shape[0], 1))
    return np.diff(np.hstack([zeros, cum, ones]), axis=1)
