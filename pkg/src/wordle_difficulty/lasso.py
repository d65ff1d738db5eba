"""L1-penalized least squares via cyclic coordinate descent.

Minimizes (1/2n)*||y - b0 - X b||^2 + alpha*||b||_1 with an unpenalized
intercept, using soft-thresholding updates until the largest coefficient
change in a sweep falls below tol.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError


@dataclass(frozen=True)
class LassoModel:
    intercept: float
    coef: np.ndarray
    alpha: float

    def predict(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        return self.intercept + X @ self.coef


def _soft_threshold(value: float, threshold: float) -> float:
    if value > threshold:
        return value - threshold
    if value < -threshold:
        return value + threshold
    return 0.0


def lasso_fit(X, y, alpha: float, tol: float = 1e-10, max_sweeps: int = 10000) -> LassoModel:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
        raise DataError(f"incompatible shapes X{X.shape}, y{y.shape}")
    if X.shape[0] < 2:
        raise DataError("need at least 2 observations")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
        raise DataError("non-finite values in the regression inputs")
    if not np.isfinite(alpha) or alpha < 0:
        raise DataError(f"alpha must be a non-negative real, got {alpha!r}")

    n, p = X.shape
    col_sq = (X * X).sum(axis=0) / n
    coef = np.zeros(p)
    intercept = 0.0
    residual = y.copy()

    for _ in range(max_sweeps):
        shift = residual.mean()
        intercept += shift
        residual -= shift
        max_delta = abs(shift)
        for j in range(p):
            if col_sq[j] == 0.0:
                continue
            rho = X[:, j] @ residual / n + col_sq[j] * coef[j]
            new = _soft_threshold(rho, alpha) / col_sq[j]
            delta = new - coef[j]
            if delta != 0.0:
                residual -= X[:, j] * delta
                coef[j] = new
                if abs(delta) > max_delta:
                    max_delta = abs(delta)
        if max_delta < tol:
            break
    coef.flags.writeable = False
    return LassoModel(intercept=float(intercept), coef=coef, alpha=float(alpha))
