"""Compiled kernels for the hot loops.

Everything here is a pure function of its arguments. The RNG is the same
splitmix64 arithmetic as rng.py, on wrapping uint64 ops, so kernel results
are bit-identical to the pure-Python reference paths regardless of thread
count or batch order.
"""

import numpy as np
from numba import njit, prange

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S32 = np.uint64(32)


@njit(cache=True, inline="always")
def _mix64(z):
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit(cache=True, inline="always")
def _next_u64(state):
    state = state + _GOLDEN
    return state, _mix64(state)


@njit(cache=True)
def mix64_kernel(z):
    return _mix64(z)


@njit(cache=True)
def _feedback_into(guess, sol, remaining):
    # Two-pass rule on uint8 letter codes; returns the base-3 feedback code.
    for k in range(26):
        remaining[k] = 0
    code = 0
    p3 = 1
    for i in range(guess.shape[0]):
        if guess[i] != sol[i]:
            remaining[sol[i]] += 1
    for i in range(guess.shape[0]):
        mark = 0
        if guess[i] == sol[i]:
            mark = 2
        else:
            c = guess[i]
            if remaining[c] > 0:
                mark = 1
                remaining[c] -= 1
        code += mark * p3
        p3 *= 3
    return code


@njit(cache=True, parallel=True)
def feedback_matrix_kernel(codes):
    n = codes.shape[0]
    out = np.empty((n, n), dtype=np.uint8)
    for g in prange(n):
        remaining = np.zeros(26, dtype=np.int32)
        for s in range(n):
            out[g, s] = _feedback_into(codes[g], codes[s], remaining)
    return out


@njit(cache=True, parallel=True)
def simulate_games_kernel(fb, solution_idx, reps, stream_seeds):
    """Play `reps` random-consistent games per solution word.

    fb is the all-pairs feedback code matrix over the candidate universe;
    stream_seeds[t] seeds word t's private splitmix64 stream. Returns
    per-word outcome counts over bins win-in-1..6 plus fail.
    """
    n = fb.shape[0]
    n_words = solution_idx.shape[0]
    counts = np.zeros((n_words, 7), dtype=np.int64)
    for t in prange(n_words):
        sol = solution_idx[t]
        state = stream_seeds[t]
        cands = np.empty(n, dtype=np.int32)
        for _ in range(reps):
            m = n
            for j in range(n):
                cands[j] = j
            won = 0
            for rnd in range(1, 7):
                state, x = _next_u64(state)
                idx = ((x >> _S32) * np.uint64(m)) >> _S32
                g = cands[idx]
                if g == sol:
                    won = rnd
                    break
                code = fb[g, sol]
                row = fb[g]
                mm = 0
                for j in range(m):
                    c = cands[j]
                    if row[c] == code:
                        cands[mm] = c
                        mm += 1
                m = mm
            if won > 0:
                counts[t, won - 1] += 1
            else:
                counts[t, 6] += 1
    return counts


@njit(cache=True)
def _levenshtein5(a, b, prev, cur):
    la = a.shape[0]
    lb = b.shape[0]
    for j in range(lb + 1):
        prev[j] = j
    for i in range(1, la + 1):
        cur[0] = i
        for j in range(1, lb + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            best = prev[j] + 1
            if cur[j - 1] + 1 < best:
                best = cur[j - 1] + 1
            if prev[j - 1] + cost < best:
                best = prev[j - 1] + cost
            cur[j] = best
        for j in range(lb + 1):
            prev[j] = cur[j]
    return prev[lb]


@njit(cache=True, parallel=True)
def lexical_counts_kernel(targets, lexcodes):
    """Per target word: orthographic neighbors, constrained window counts
    (x=1..3), unconstrained window counts (x=1..3), Levenshtein distance sum,
    and the number of lexicon words compared (entries equal to the target are
    skipped)."""
    t_n = targets.shape[0]
    n = lexcodes.shape[0]
    length = targets.shape[1]
    counts = np.zeros((t_n, 8), dtype=np.int64)
    others = np.zeros(t_n, dtype=np.int64)
    for t in prange(t_n):
        w = targets[t]
        prev = np.empty(length + 1, dtype=np.int32)
        cur = np.empty(length + 1, dtype=np.int32)
        for jw in range(n):
            v = lexcodes[jw]
            same = True
            for i in range(length):
                if w[i] != v[i]:
                    same = False
                    break
            if same:
                continue
            others[t] += 1
            diff = 0
            for i in range(length):
                if w[i] != v[i]:
                    diff += 1
            if diff == 1:
                counts[t, 0] += 1
            for x in range(1, 4):
                for start in range(length - x + 1):
                    match = True
                    for i in range(x):
                        if w[start + i] != v[start + i]:
                            match = False
                            break
                    if match:
                        counts[t, x] += 1
            for x in range(1, 4):
                for start in range(length - x + 1):
                    found = False
                    for vs in range(length - x + 1):
                        ok = True
                        for i in range(x):
                            if w[start + i] != v[vs + i]:
                                ok = False
                                break
                        if ok:
                            found = True
                            break
                    if found:
                        counts[t, 3 + x] += 1
            counts[t, 7] += _levenshtein5(w, v, prev, cur)
    return counts, others
