import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordle_difficulty.cluster import hcluster, kmeans_1d, silhouette
from wordle_difficulty.errors import DataError

from helpers import best_contiguous_partition, silhouette_reference

finite_floats = st.floats(min_value=-1e6, max_value=1e6,
                          allow_nan=False, allow_infinity=False)


class TestHCluster:
    def test_far_separated_pairs(self):
        labels = hcluster([1.0, 1.01, 5.0, 5.02], 2)
        assert labels.tolist() == [1, 1, 2, 2]

    def test_k_equals_n(self):
        labels = hcluster([3.0, 1.0, 2.0], 3)
        assert labels.tolist() == [3, 1, 2]

    def test_label_means_increase(self):
        rng = np.random.default_rng(0)
        values = rng.normal(size=60)
        for linkage in ("ward", "average"):
            labels = hcluster(values, 4, linkage)
            means = [values[labels == j].mean() for j in range(1, 5)]
            assert all(a < b for a, b in zip(means, means[1:]))

    def test_k_bounds(self):
        with pytest.raises(DataError):
            hcluster([1.0, 2.0], 1)
        with pytest.raises(DataError):
            hcluster([1.0, 2.0], 3)

    def test_unknown_linkage(self):
        with pytest.raises(DataError):
            hcluster([1.0, 2.0], 2, "single")

    def test_ward_matches_exhaustive_partition_search(self):
        rng = np.random.default_rng(11)
        for _ in range(60):
            n = int(rng.integers(3, 9))
            k = int(rng.integers(2, n + 1))
            values = rng.uniform(0, 10, size=n)
            labels = hcluster(values, k, "ward")
            ref_labels, ref_cost = best_contiguous_partition(values, k)
            cost = sum(
                float(((values[labels == j] - values[labels == j].mean()) ** 2).sum())
                for j in range(1, k + 1)
            )
            assert cost == pytest.approx(ref_cost, abs=1e-9)

    def test_ward_optimal_on_near_ties(self):
        # a greedy merge heuristic picks {2+eps,3} first and ends suboptimal
        values = np.array([1.0, 2.0 + 1e-9, 3.0, 4.0])
        labels = hcluster(values, 2, "ward")
        assert labels.tolist() == [1, 1, 2, 2]

    def test_average_linkage_groups_adjacent(self):
        labels = hcluster([0.0, 0.1, 0.2, 10.0, 10.1, 20.0], 3, "average")
        assert labels.tolist() == [1, 1, 1, 2, 2, 3]


class TestKMeans:
    def test_obvious_clusters(self):
        values = np.array([0.0, 0.1, 5.0, 5.1, 9.9, 10.0])
        labels = kmeans_1d(values, 3, seed=1)
        assert labels.tolist() == [1, 1, 2, 2, 3, 3]

    def test_deterministic_under_seed(self):
        rng = np.random.default_rng(5)
        values = rng.normal(size=40)
        assert np.array_equal(kmeans_1d(values, 4, seed=9), kmeans_1d(values, 4, seed=9))


class TestSilhouette:
    def test_two_tight_far_clusters(self):
        values = [0.0, 0.001, 100.0, 100.001]
        labels = [1, 1, 2, 2]
        assert silhouette(values, labels) > 0.999

    def test_all_singletons_score_zero(self):
        assert silhouette([1.0, 2.0, 3.0], [1, 2, 3]) == 0.0

    def test_needs_two_clusters(self):
        with pytest.raises(DataError):
            silhouette([1.0, 2.0], [1, 1])

    @settings(deadline=None, max_examples=60)
    @given(st.lists(finite_floats, min_size=4, max_size=20), st.integers(2, 4),
           st.randoms(use_true_random=False))
    def test_matches_reference_implementation(self, values, k, rnd):
        labels = [rnd.randint(1, k) for _ in values]
        if len(set(labels)) < 2:
            labels[0] = 1
            labels[1] = 2
        ours = silhouette(values, labels)
        assert ours == pytest.approx(silhouette_reference(values, labels), abs=1e-12)
        assert -1.0 <= ours <= 1.0
