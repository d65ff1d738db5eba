"""Guess-count distributions over seven outcome bins.

Bins 1..6 hold the probability (in percent) of solving the puzzle in that
many tries; bin 7 holds the probability of failing all six. A distribution
always sums to 100.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DataError

BIN_COUNT = 7
FAIL_BIN = 7  # failure is scored as 7 tries in expectations

_BIN_VALUES = np.arange(1, BIN_COUNT + 1, dtype=np.float64)
_SUM_TOL = 1e-9


@dataclass(frozen=True)
class GuessDistribution:
    """Seven percentages (tries 1..6 plus failure) summing to 100."""

    bins: np.ndarray = field(repr=False)

    def __post_init__(self):
        bins = np.asarray(self.bins, dtype=np.float64)
        if bins.shape != (BIN_COUNT,):
            raise DataError(f"distribution needs {BIN_COUNT} bins, got shape {bins.shape}")
        if not np.all(np.isfinite(bins)):
            raise DataError("distribution bins must be finite")
        if np.any(bins < -_SUM_TOL):
            raise DataError(f"negative distribution bin: {bins.min()!r}")
        bins = np.clip(bins, 0.0, None)
        total = bins.sum()
        if abs(total - 100.0) > _SUM_TOL:
            raise DataError(f"distribution sums to {total!r}, expected 100")
        bins.flags.writeable = False
        object.__setattr__(self, "bins", bins)

    @classmethod
    def from_percent(cls, values) -> "GuessDistribution":
        return cls(np.asarray(values, dtype=np.float64))

    @classmethod
    def from_counts(cls, counts, reps: int) -> "GuessDistribution":
        counts = np.asarray(counts, dtype=np.float64)
        if reps <= 0:
            raise DataError("reps must be positive")
        if counts.sum() != reps:
            raise DataError(f"counts sum to {counts.sum()}, expected reps={reps}")
        return cls(100.0 * counts / reps)

    @property
    def expectation(self) -> float:
        return float(_BIN_VALUES @ self.bins) / 100.0

    def renormalized(self, tol: float = _SUM_TOL) -> "GuessDistribution":
        """Rescale to an exact sum of 100; drift beyond tol is a hard error."""
        bins = np.asarray(self.bins, dtype=np.float64)
        total = bins.sum()
        if abs(total - 100.0) > tol:
            raise DataError(f"distribution drifted to sum {total!r} (tolerance {tol})")
        return GuessDistribution(bins * (100.0 / total))

    def allclose(self, other: "GuessDistribution", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.bins, other.bins, rtol=0.0, atol=atol))

    def __eq__(self, other):
        if not isinstance(other, GuessDistribution):
            return NotImplemented
        return bool(np.array_equal(self.bins, other.bins))


def expectation(d: GuessDistribution) -> float:
    """Expected number of tries, failure counted as 7."""
    return d.expectation


def renormalize_percent(values, tol: float = _SUM_TOL) -> GuessDistribution:
    """Build a distribution from raw percentages whose sum may be off 100.

    Used for survey-style data rounded to integers: any raw sum within
    [95, 105] is accepted and rescaled to exactly 100.
    """
    values = np.asarray(values, dtype=np.float64)
    total = values.sum()
    if not 95.0 <= total <= 105.0:
        raise DataError(f"raw percentages sum to {total!r}, outside the accepted [95, 105] window")
    return GuessDistribution(values * (100.0 / total))
