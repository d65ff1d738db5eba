"""Principal-axis factor extraction from the sample correlation matrix.

Loadings are eigenvector * sqrt(eigenvalue) columns for the m largest
eigenvalues, unrotated. Score coefficients use the regression method
(R^-1 @ loadings), so a standardized row z scores as z @ score_coef.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, NumericalError

_MAX_CONDITION = 1e12


@dataclass(frozen=True)
class FactorModel:
    score_coef: np.ndarray           # (p, m)
    m: int
    loadings: np.ndarray | None = None   # (p, m); absent on externally supplied models
    eigenvalues: np.ndarray | None = None  # full spectrum, non-increasing


def factor_fit(Z, m: int) -> FactorModel:
    Z = np.asarray(Z, dtype=np.float64)
    if Z.ndim != 2:
        raise DataError("Z must be a 2-D standardized matrix")
    n, p = Z.shape
    if n <= p:
        raise DataError(f"need more rows than columns, got {n} rows for {p} columns")
    if not 1 <= m <= p:
        raise DataError(f"factor count {m} outside [1, {p}]")

    corr = np.corrcoef(Z, rowvar=False)
    condition = np.linalg.cond(corr)
    if not np.isfinite(condition) or condition > _MAX_CONDITION:
        raise NumericalError("correlation matrix is numerically singular "
                             f"(condition number {condition:.3e})")

    eigvals, eigvecs = np.linalg.eigh(corr)
    eigvals = eigvals[::-1]
    eigvecs = eigvecs[:, ::-1]
    # Deterministic sign: largest-magnitude component of each vector positive.
    for j in range(p):
        pivot = np.argmax(np.abs(eigvecs[:, j]))
        if eigvecs[pivot, j] < 0:
            eigvecs[:, j] = -eigvecs[:, j]

    loadings = eigvecs[:, :m] * np.sqrt(np.clip(eigvals[:m], 0.0, None))
    score_coef = np.linalg.solve(corr, loadings)
    loadings.flags.writeable = False
    score_coef.flags.writeable = False
    eigvals.flags.writeable = False
    return FactorModel(score_coef=score_coef, m=int(m), loadings=loadings, eigenvalues=eigvals)


def factor_scores(model: FactorModel, Z) -> np.ndarray:
    """Factor scores for standardized rows; (m,) for a single row."""
    Z = np.asarray(Z, dtype=np.float64)
    single = Z.ndim == 1
    scores = np.atleast_2d(Z) @ model.score_coef
    return scores[0] if single else scores
