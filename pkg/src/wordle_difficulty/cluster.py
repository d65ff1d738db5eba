"""One-dimensional clustering of difficulty scores.

Ward clustering on scalars is computed exactly: the optimal k-partition by
within-cluster sum of squares is contiguous in sorted order, so dynamic
programming over sorted prefixes finds it (a greedy merge heuristic can
miss it on near-ties). Average linkage merges adjacent sorted clusters
greedily. Labels are always renumbered so that cluster means increase with
the label; label k marks the hardest cluster.
"""

from __future__ import annotations

import numpy as np

from .errors import DataError

LINKAGES = ("ward", "average")


def _check_values(values, k):
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1:
        raise DataError("values must be one-dimensional")
    if not np.all(np.isfinite(values)):
        raise DataError("values must be finite")
    n = values.shape[0]
    if not 2 <= k <= n:
        raise DataError(f"cluster count {k} outside [2, {n}]")
    return values, n


def _labels_from_boundaries(order, boundaries, n):
    # boundaries: sorted segment start offsets incl. 0, excl. n
    labels = np.empty(n, dtype=np.int64)
    starts = list(boundaries) + [n]
    for seg in range(len(boundaries)):
        for pos in range(starts[seg], starts[seg + 1]):
            labels[order[pos]] = seg + 1
    return labels


def hcluster(values, k: int, linkage: str = "ward") -> np.ndarray:
    """Cluster scalars into k groups; returns labels 1..k ordered by mean."""
    if linkage not in LINKAGES:
        raise DataError(f"unknown linkage {linkage!r}; expected one of {LINKAGES}")
    values, n = _check_values(values, k)
    order = np.argsort(values, kind="stable")
    x = values[order]
    if linkage == "ward":
        boundaries = _ward_boundaries(x, k)
    else:
        boundaries = _average_boundaries(x, k)
    return _labels_from_boundaries(order, boundaries, n)


def _segment_cost(s1, s2, i, j):
    # within-segment sum of squares for x[i:j]
    length = j - i
    seg_sum = s1[j] - s1[i]
    return (s2[j] - s2[i]) - seg_sum * seg_sum / length


def _ward_boundaries(x, k):
    n = x.shape[0]
    s1 = np.concatenate([[0.0], np.cumsum(x)])
    s2 = np.concatenate([[0.0], np.cumsum(x * x)])
    cost = np.full((k + 1, n + 1), np.inf)
    split = np.zeros((k + 1, n + 1), dtype=np.int64)
    for j in range(1, n + 1):
        cost[1, j] = _segment_cost(s1, s2, 0, j)
    for m in range(2, k + 1):
        for j in range(m, n + 1):
            best = np.inf
            best_i = m - 1
            for i in range(m - 1, j):
                c = cost[m - 1, i] + _segment_cost(s1, s2, i, j)
                if c < best:
                    best = c
                    best_i = i
            cost[m, j] = best
            split[m, j] = best_i
    boundaries = []
    j = n
    for m in range(k, 0, -1):
        i = split[m, j] if m > 1 else 0
        boundaries.append(i)
        j = i
    return sorted(boundaries)


def _average_boundaries(x, k):
    # Adjacent-merge agglomeration; inter-cluster average distance between
    # contiguous sorted clusters reduces to the difference of their means.
    sums = [float(v) for v in x]
    counts = [1] * len(x)
    starts = list(range(len(x)))
    while len(sums) > k:
        gaps = [sums[i + 1] / counts[i + 1] - sums[i] / counts[i] for i in range(len(sums) - 1)]
        i = int(np.argmin(gaps))
        sums[i] += sums.pop(i + 1)
        counts[i] += counts.pop(i + 1)
        starts.pop(i + 1)
    return starts


def kmeans_1d(values, k: int, restarts: int = 50, seed: int = 0) -> np.ndarray:
    """Lloyd iterations with seeded restarts; labels ordered by center."""
    values, n = _check_values(values, k)
    rng = np.random.default_rng(seed)
    best_labels = None
    best_inertia = np.inf
    for _ in range(restarts):
        centers = values[rng.choice(n, size=k, replace=False)].astype(np.float64)
        for _ in range(100):
            assign = np.argmin(np.abs(values[:, None] - centers[None, :]), axis=1)
            new_centers = centers.copy()
            for c in range(k):
                members = values[assign == c]
                if members.size:
                    new_centers[c] = members.mean()
                else:
                    new_centers[c] = values[rng.integers(n)]
            if np.allclose(new_centers, centers):
                centers = new_centers
                break
            centers = new_centers
        assign = np.argmin(np.abs(values[:, None] - centers[None, :]), axis=1)
        inertia = float(((values - centers[assign]) ** 2).sum())
        if inertia < best_inertia - 1e-12:
            best_inertia = inertia
            best_labels = (np.argsort(np.argsort(centers, kind="stable"), kind="stable")[assign] + 1)
    return best_labels.astype(np.int64)


def silhouette(values, labels) -> float:
    """Mean per-point (b-a)/max(a,b); singleton clusters contribute 0."""
    values = np.asarray(values, dtype=np.float64)
    labels = np.asarray(labels)
    if values.shape != labels.shape or values.ndim != 1:
        raise DataError("values and labels must be aligned 1-D arrays")
    uniq = np.unique(labels)
    if uniq.size < 2:
        raise DataError("silhouette needs at least 2 clusters")
    dist = np.abs(values[:, None] - values[None, :])
    scores = np.zeros(values.shape[0])
    for i in range(values.shape[0]):
        own = labels == labels[i]
        own_size = own.sum()
        if own_size == 1:
            continue
        a = dist[i, own].sum() / (own_size - 1)
        b = min(dist[i, labels == other].mean() for other in uniq if other != labels[i])
        denom = max(a, b)
        if denom > 0:
            scores[i] = (b - a) / denom
    return float(scores.mean())
