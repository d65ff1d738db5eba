"""Independent reference implementations used as test oracles.

Everything here is deliberately written a different way than the package
code (enumeration, recursion, plain loops) so that agreement is evidence,
not tautology.
"""

import itertools

import numpy as np

from wordle_difficulty.words import Lexicon


def make_lex(*words) -> Lexicon:
    return Lexicon.from_words(words)


# ---------------------------------------------------------------- feedback

def feedback_recursive(guess: str, solution: str) -> str:
    """Two-pass rule by recursive green removal; returns a G/Y/X string."""
    for i, (g, s) in enumerate(zip(guess, solution)):
        if g == s:
            rest = feedback_recursive(guess[:i] + guess[i + 1:], solution[:i] + solution[i + 1:])
            return rest[:i] + "G" + rest[i:]
    marks = []
    pool = list(solution)
    for g in guess:
        if g in pool:
            marks.append("Y")
            pool.remove(g)
        else:
            marks.append("X")
    return "".join(marks)


# ---------------------------------------------------------------- QP oracle

def _eqp_candidate(free, lower, weights, target, active):
    """Solve one equality-constrained subproblem with the free set `free`.

    Eliminates the two lowest-weight free coordinates through the constraint
    pair (sum, index-weighted sum) so that the e^-bin weight spread cannot
    poison the solve, then minimizes the diagonal quadratic over the rest.
    """
    idx = np.arange(1.0, 8.0)
    delta = np.zeros(7)
    delta[active] = lower[active]
    r0 = -delta[active].sum()
    r1 = target - idx[active] @ delta[active]
    if len(free) == 0:
        return delta, (abs(r0), abs(r1))
    if len(free) == 1:
        f = free[0]
        delta[f] = r0
        return delta, (0.0, abs(idx[f] * r0 - r1))
    by_weight = sorted(free, key=lambda i: weights[i])
    p, q = by_weight[0], by_weight[1]
    rest = by_weight[2:]
    ip, iq = idx[p], idx[q]
    span = iq - ip
    if rest:
        ir = idx[rest]
        wr = weights[rest]
        coef_p = (ir - iq) / span
        coef_q = (ip - ir) / span
        base_p = (iq * r0 - r1) / span
        base_q = (r1 - ip * r0) / span
        scale = 1.0 / np.sqrt(wr)
        up = np.sqrt(weights[p]) * scale * coef_p
        uq = np.sqrt(weights[q]) * scale * coef_q
        lhs = np.eye(len(rest)) + np.outer(up, up) + np.outer(uq, uq)
        rhs = -(weights[p] * base_p * scale * coef_p + weights[q] * base_q * scale * coef_q)
        d_rest = scale * np.linalg.solve(lhs, rhs)
        delta[rest] = d_rest
        delta[p] = base_p + coef_p @ d_rest
        delta[q] = base_q + coef_q @ d_rest
    else:
        delta[p] = (iq * r0 - r1) / span
        delta[q] = (r1 - ip * r0) / span
    return delta, (0.0, 0.0)


def qp_bruteforce(bins, target, weights):
    """Global optimum by enumerating all 2^7 candidate active sets.

    For each subset A the equality-constrained minimizer with delta_A pinned
    at the lower bounds is computed; the best feasible candidate over all
    subsets is the optimum of the bound-constrained program.
    """
    bins = np.asarray(bins, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    lower = -bins
    idx = np.arange(1.0, 8.0)
    best = None
    best_obj = np.inf
    for mask in range(128):
        active = [i for i in range(7) if mask >> i & 1]
        free = [i for i in range(7) if not mask >> i & 1]
        delta, residuals = _eqp_candidate(free, lower, weights, target, active)
        if max(residuals) > 1e-7:
            continue
        if abs(delta.sum()) > 1e-7 or abs(idx @ delta - target) > 1e-7:
            continue
        if np.any(delta < lower - 1e-9):
            continue
        obj = float(weights @ (delta * delta))
        if obj < best_obj - 1e-12:
            best_obj = obj
            best = delta
    return best, best_obj


def qp_bruteforce_mp(bins, target, weights, dps=50):
    """The same enumeration in 50-digit arithmetic (slow; for spot checks)."""
    import mpmath as mp

    with mp.workdps(dps):
        bins = [mp.mpf(repr(float(v))) for v in np.asarray(bins, dtype=np.float64)]
        weights = [mp.mpf(repr(float(v))) for v in np.asarray(weights, dtype=np.float64)]
        target_mp = mp.mpf(repr(float(target)))
        lower = [-v for v in bins]
        best = None
        best_obj = mp.inf
        for mask in range(128):
            active = [i for i in range(7) if mask >> i & 1]
            free = [i for i in range(7) if not mask >> i & 1]
            r0 = -sum(lower[i] for i in active)
            r1 = target_mp - sum((i + 1) * lower[i] for i in active)
            delta = [mp.mpf(0)] * 7
            for i in active:
                delta[i] = lower[i]
            if not free:
                if abs(r0) > 1e-20 or abs(r1) > 1e-20:
                    continue
            elif len(free) == 1:
                f = free[0]
                delta[f] = r0
                if abs((f + 1) * r0 - r1) > mp.mpf("1e-20"):
                    continue
            else:
                # stationarity: 2 w_i d_i = mu1 + mu2 * (i+1); plug into equalities
                s00 = sum(1 / (2 * weights[i]) for i in free)
                s01 = sum((i + 1) / (2 * weights[i]) for i in free)
                s11 = sum((i + 1) ** 2 / (2 * weights[i]) for i in free)
                det = s00 * s11 - s01 * s01
                if det == 0:
                    continue
                mu1 = (s11 * r0 - s01 * r1) / det
                mu2 = (s00 * r1 - s01 * r0) / det
                for i in free:
                    delta[i] = (mu1 + mu2 * (i + 1)) / (2 * weights[i])
            if any(delta[i] < lower[i] - mp.mpf("1e-30") for i in range(7)):
                continue
            obj = sum(w * d * d for w, d in zip(weights, delta))
            if obj < best_obj:
                best_obj = obj
                best = [float(d) for d in delta]
    return np.array(best), float(best_obj)


# ------------------------------------------------------------- clustering

def best_contiguous_partition(values, k):
    """Exhaustive minimum within-cluster sum of squares over contiguous
    partitions of the sorted values; returns labels aligned to the input."""
    values = np.asarray(values, dtype=np.float64)
    order = np.argsort(values, kind="stable")
    x = values[order]
    n = len(x)

    def ssq(seg):
        return float(((seg - seg.mean()) ** 2).sum())

    best_cost = np.inf
    best_bounds = None
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        cost = sum(ssq(x[bounds[i]:bounds[i + 1]]) for i in range(k))
        if cost < best_cost - 1e-15:
            best_cost = cost
            best_bounds = bounds
    labels = np.empty(n, dtype=np.int64)
    for seg in range(k):
        labels[order[best_bounds[seg]:best_bounds[seg + 1]]] = seg + 1
    return labels, best_cost


def silhouette_reference(values, labels):
    """Textbook silhouette with plain loops."""
    values = list(map(float, values))
    labels = list(labels)
    clusters = sorted(set(labels))
    total = 0.0
    for i, (v, lab) in enumerate(zip(values, labels)):
        own = [abs(v - w) for j, (w, l) in enumerate(zip(values, labels))
               if l == lab and j != i]
        if not own:
            continue
        a = sum(own) / len(own)
        b = min(
            sum(abs(v - w) for w, l in zip(values, labels) if l == other)
            / sum(1 for l in labels if l == other)
            for other in clusters if other != lab
        )
        if max(a, b) > 0:
            total += (b - a) / max(a, b)
    return total / len(values)


# ------------------------------------------------------------ regression

def binary_logit_reference(X, y01):
    """High-precision binary logistic MLE via scipy, intercept included.

    Returns (intercept, coef). Used as the k=2 equivalence oracle for the
    proportional-odds fitter.
    """
    from scipy.optimize import minimize

    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y01, dtype=np.float64)
    Xd = np.hstack([np.ones((len(y), 1)), X])

    def nll(params):
        z = Xd @ params
        # log(1 + exp(z)) - y*z, stably
        return float(np.sum(np.logaddexp(0.0, z) - y * z))

    def grad(params):
        z = Xd @ params
        p = 1.0 / (1.0 + np.exp(-z))
        return Xd.T @ (p - y)

    result = minimize(nll, np.zeros(Xd.shape[1]), jac=grad, method="BFGS",
                      options={"gtol": 1e-12, "maxiter": 500})
    return result.x[0], result.x[1:]
