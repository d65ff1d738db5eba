"""Distribution correction as a seven-variable quadratic program.

Finds the correction vector of minimum weighted square size that keeps the
total mass unchanged, shifts the expectation by the requested amount, and
never drives a bin negative. Weights e^(-bin) make corrections cheap where
the raw distribution is small, so the correction mostly relocates the peak.

Solved with a primal active-set iteration on the equality-constrained
weighted least-squares subproblem.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distribution import BIN_COUNT, GuessDistribution
from .errors import NumericalError

WEIGHT_FLOOR = 1e-12
_BOUND_TOL = 1e-9
_BIN_INDEX = np.arange(1, BIN_COUNT + 1, dtype=np.float64)


@dataclass(frozen=True)
class QpSolution:
    delta: np.ndarray
    active_set: tuple[int, ...]  # 1-based bins where delta == -raw bin
    objective: float
    target: float          # requested expectation shift, percent-scaled
    applied_target: float  # after clamping to the feasible interval
    clamped: bool


def correction_weights(bins: np.ndarray) -> np.ndarray:
    return np.maximum(np.exp(-np.asarray(bins, dtype=np.float64)), WEIGHT_FLOOR)


def feasible_target_interval(d_raw: GuessDistribution) -> tuple[float, float]:
    """Range of achievable 100*(expectation shift) values."""
    e = d_raw.expectation
    return 100.0 * (1.0 - e), 100.0 * (BIN_COUNT - e)


def _solve_subproblem(free, weights, rhs):
    """Minimizer over the free coordinates given the equality right-hand side.

    Weights span up to twelve orders of magnitude (e^-bin floored at 1e-12),
    so the textbook Schur-complement solve in the multipliers loses ~6 digits.
    Instead the two smallest-weight coordinates are eliminated through the
    integer constraint matrix (perfectly conditioned) and the remaining
    quadratic is solved after diagonal preconditioning; the rank-2 update is
    then bounded because the anchor weights never exceed the rest.
    """
    idx = _BIN_INDEX[free]
    w = weights[free]
    order = np.argsort(w, kind="stable")
    p_loc, q_loc = order[0], order[1]
    rest_loc = order[2:]
    p, q = idx[p_loc], idx[q_loc]
    det = q - p
    r0, r1 = rhs
    wp, wq = w[p_loc], w[q_loc]
    delta = np.zeros(free.size)
    if rest_loc.size:
        i_rest = idx[rest_loc]
        # anchors as affine functions of the rest: dp = cp0 + cp.d, dq = cq0 + cq.d
        cp0 = (q * r0 - r1) / det
        cq0 = (r1 - p * r0) / det
        cp = (i_rest - q) / det
        cq = (p - i_rest) / det
        s = 1.0 / np.sqrt(w[rest_loc])
        ap = np.sqrt(wp) * (s * cp)
        aq = np.sqrt(wq) * (s * cq)
        h = np.eye(rest_loc.size) + np.outer(ap, ap) + np.outer(aq, aq)
        g = -(wp * cp0 * (s * cp) + wq * cq0 * (s * cq))
        d_rest = s * np.linalg.solve(h, g)
        dp = cp0 + cp @ d_rest
        dq = cq0 + cq @ d_rest
        delta[rest_loc] = d_rest
    else:
        dp = (q * r0 - r1) / det
        dq = (r1 - p * r0) / det
    delta[p_loc] = dp
    delta[q_loc] = dq
    # stationarity at the anchors pins the equality multipliers exactly
    mu2 = (2.0 * wq * dq - 2.0 * wp * dp) / det
    mu1 = 2.0 * wp * dp - mu2 * p
    return delta, np.array([mu1, mu2])


def qp_correct(d_raw: GuessDistribution, target: float) -> QpSolution:
    bins = np.asarray(d_raw.bins, dtype=np.float64)
    weights = correction_weights(bins)
    lower = -bins
    lo, hi = feasible_target_interval(d_raw)
    applied = min(max(float(target), lo), hi)
    clamped = applied != float(target)

    # Boundary targets admit exactly one feasible point: all mass in bin 1 or 7.
    if applied == lo or applied == hi:
        delta = lower.copy()
        delta[0 if applied == lo else BIN_COUNT - 1] += 100.0
        return _finish(delta, weights, lower, float(target), applied, clamped)

    delta, working = _initial_point(bins, applied)

    for _ in range(200):
        free = np.flatnonzero(~working)
        active = np.flatnonzero(working)
        rhs = np.array([0.0 - lower[active].sum(),
                        applied - _BIN_INDEX[active] @ lower[active]])
        candidate = lower.copy()
        if free.size >= 2:
            candidate[free], mu = _solve_subproblem(free, weights, rhs)
        else:
            # One free coordinate: the mass equality pins it exactly; the
            # stationarity system gives least-squares multipliers.
            candidate[free] = rhs[0]
            ef = np.vstack([np.ones(free.size), _BIN_INDEX[free]])
            mu = np.linalg.lstsq(ef.T, 2.0 * weights[free] * candidate[free], rcond=None)[0]

        direction = candidate - delta
        if np.max(np.abs(direction)) < 1e-10:
            multipliers = (2.0 * weights[active] * candidate[active]
                           - (mu[0] + mu[1] * _BIN_INDEX[active]))
            # Tolerance must track each multiplier's own rounding budget:
            # with weights floored at 1e-12, meaningful multipliers can be
            # ~1e-11 and a fixed absolute slack would hide them.
            scale = (2.0 * weights[active] * np.abs(candidate[active])
                     + abs(mu[0]) + 7.0 * abs(mu[1]))
            slack = 1e-12 * scale + 1e-30
            if multipliers.size == 0 or np.all(multipliers >= -slack):
                return _finish(candidate, weights, lower, float(target), applied, clamped)
            worst = np.argmin(multipliers / (scale + 1e-300))
            working[active[worst]] = False
            continue

        step = 1.0
        blocker = -1
        for i in free:
            if direction[i] < -1e-15:
                ratio = (lower[i] - delta[i]) / direction[i]
                if ratio < step:
                    step = ratio
                    blocker = i
        if step >= 1.0:
            delta = candidate  # full step lands exactly on the subproblem solution
        else:
            delta = delta + step * direction
            delta[blocker] = lower[blocker]
            working[blocker] = True
    raise NumericalError("active-set iteration did not converge in 200 steps "
                         f"(target {target!r}, bins {bins.tolist()!r})")


def _initial_point(bins: np.ndarray, applied: float):
    """Feasible start: mass on two (or three) adjacent bins hitting both equalities."""
    e_raw = float(_BIN_INDEX @ bins) / 100.0
    mean_bin = (applied + 100.0 * e_raw) / 100.0  # in (1, 7)
    mass = np.zeros(BIN_COUNT)
    j = min(int(mean_bin), BIN_COUNT - 1)
    frac = mean_bin - j
    if frac < 1e-12 and 2 <= j <= BIN_COUNT - 1:
        # Integer mean: spread over three bins to keep >= 2 coordinates free.
        mass[j - 2] = 1.0
        mass[j - 1] = 98.0
        mass[j] = 1.0
    else:
        mass[j - 1] = 100.0 * (1.0 - frac)
        mass[j] = 100.0 * frac
    delta = mass - bins
    working = mass == 0.0
    return delta, working


def _finish(delta, weights, lower, target, applied, clamped) -> QpSolution:
    delta = np.asarray(delta, dtype=np.float64)
    # Solver-bug guard: the equality and bound residuals must be tiny.
    if (abs(delta.sum()) > _BOUND_TOL
            or abs(_BIN_INDEX @ delta - applied) > _BOUND_TOL * max(1.0, abs(applied))
            or np.any(delta < lower - _BOUND_TOL)):
        raise NumericalError("correction violates its constraints; "
                             f"delta={delta.tolist()!r}, target={target!r}")
    active = tuple(int(i) + 1 for i in np.flatnonzero(np.abs(delta - lower) <= _BOUND_TOL))
    objective = float(weights @ (delta * delta))
    delta.flags.writeable = False
    return QpSolution(delta=delta, active_set=active, objective=objective,
                      target=target, applied_target=applied, clamped=clamped)
