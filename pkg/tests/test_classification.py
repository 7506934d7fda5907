import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sklearn.metrics import homogeneity_completeness_v_measure

from quadcoef.ml import LabeledFeatureMatrix, cluster_quality, kmeans, lloyd, pca, pca_2d, standardize


def entropy(p):
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    return -(p * np.log(p)).sum()


class TestClusterQuality:
    def test_identical(self):
        assert cluster_quality([0, 0, 1, 2], ["a", "a", "b", "c"]) == (1.0, 1.0, 1.0)

    def test_single_cluster_balanced_classes(self):
        h, c, v = cluster_quality([0, 0, 0, 0], ["a", "a", "b", "b"])
        assert h == 0.0
        assert c == 1.0
        assert v == 0.0

    def test_hand_entropy(self):
        labels = ["a", "a", "b", "b"]
        clusters = [1, 1, 2, 3]
        h, c, v = cluster_quality(clusters, labels)
        assert h == 1.0
        # H(cluster) over {1/2, 1/4, 1/4}; H(cluster | class): class b splits evenly
        h_k = entropy([0.5, 0.25, 0.25])
        h_k_given_c = 0.5 * entropy([0.5, 0.5])
        assert c == pytest.approx(1 - h_k_given_c / h_k, abs=1e-15)
        assert c < 1
        assert v == pytest.approx(2 * c / (1 + c), abs=1e-15)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            cluster_quality([0, 1], [0])

    @given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 3)), min_size=1, max_size=40))
    @settings(max_examples=300, deadline=None)
    def test_matches_sklearn(self, pairs):
        clusters, labels = map(list, zip(*pairs))
        ours = cluster_quality(clusters, labels)
        ref = homogeneity_completeness_v_measure(labels, clusters)
        np.testing.assert_allclose(ours, ref, atol=1e-12)


@given(
    st.lists(st.tuples(st.integers(0, 5), st.integers(0, 4)), min_size=1, max_size=30),
    st.randoms(use_true_random=False),
)
@settings(max_examples=1000, deadline=None)
def test_v_measure_invariant_under_relabeling(pairs, rnd):
    clusters, labels = map(list, zip(*pairs))
    cmap = list(range(6))
    lmap = list(range(5))
    rnd.shuffle(cmap)
    rnd.shuffle(lmap)
    a = cluster_quality(clusters, labels)
    b = cluster_quality([cmap[x] for x in clusters], [f"L{lmap[x]}" for x in labels])
    np.testing.assert_allclose(a, b, atol=1e-12)
    assert 0.0 <= a[2] <= 1.0


def two_clouds(rng, n=20):
    a = rng.normal(0, 0.1, size=(n, 2))
    b = rng.normal(5, 0.1, size=(n, 2))
    return np.vstack([a, b]), ["x"] * n + ["y"] * n


class TestKMeans:
    def test_separated_clouds(self):
        x, labels = two_clouds(np.random.default_rng(0))
        res = kmeans(x, 2, restarts=20, seed=1, labels=labels)
        assert (res.homogeneity, res.completeness, res.v_measure) == (1.0, 1.0, 1.0)

    def test_singletons(self):
        x, labels = two_clouds(np.random.default_rng(1), n=4)
        res = kmeans(x, len(x), restarts=3, seed=0, labels=labels)
        assert res.homogeneity == 1.0
        assert res.completeness < 1.0

    def test_k_too_large(self):
        with pytest.raises(ValueError):
            kmeans(np.zeros((3, 2)), 4, restarts=1, labels=[0, 1, 2])

    def test_restarts_must_be_positive(self):
        with pytest.raises(ValueError):
            kmeans(np.zeros((3, 2)), 2, restarts=0, labels=[0, 1, 2])

    def test_deterministic_and_jobs_independent(self):
        rng = np.random.default_rng(3)
        x = rng.normal(size=(30, 4))
        labels = list(rng.integers(0, 3, size=30))
        a = kmeans(x, 3, restarts=40, seed=9, labels=labels)
        b = kmeans(x, 3, restarts=40, seed=9, labels=labels, jobs=4)
        assert np.array_equal(a.assignments, b.assignments)
        assert a.best_restart == b.best_restart
        assert a.v_measure == b.v_measure

    @given(st.integers(0, 10_000))
    @settings(max_examples=50, deadline=None)
    def test_objective_non_increasing(self, seed):
        rng = np.random.default_rng(seed)
        x = rng.normal(size=(25, 3))
        k = int(rng.integers(1, 6))
        init = x[rng.choice(len(x), size=k, replace=False)]
        run = lloyd(x, init, max_iter=300)
        assert np.all(np.diff(run.history) <= 1e-9)
        assert len(np.unique(run.assignments)) == k

    def test_empty_cluster_reseeded(self):
        x = np.array([[0.0], [0.1], [0.2], [10.0]])
        # the third centroid starts far away from every point
        run = lloyd(x, np.array([[0.0], [10.0], [100.0]]))
        assert len(np.unique(run.assignments)) == 3

    def test_matrix_standardised(self):
        raw = np.array([[2.0, 0.1], [30.0, 0.2], [10.0, 0.9]])
        m = LabeledFeatureMatrix(["a", "b", "c"], raw, [0, 0, 1])
        np.testing.assert_allclose(m.values.mean(axis=0), 0, atol=1e-15)
        np.testing.assert_allclose(m.values.std(axis=0), 1)
        np.testing.assert_allclose(m.values * m.scale + m.mean, raw)
        off = LabeledFeatureMatrix(["a", "b", "c"], raw, [0, 0, 1], standardize=False)
        assert np.array_equal(off.values, raw)

    def test_constant_column(self):
        z, _, scale = standardize(np.array([[1.0, 3.0], [2.0, 3.0]]))
        assert scale[1] == 1.0
        assert np.all(z[:, 1] == 0)


class TestPCA:
    def test_axis_aligned(self):
        rng = np.random.default_rng(0)
        x = np.column_stack([rng.normal(0, 3, 200), rng.normal(0, 1, 200)])
        res = pca(x)
        np.testing.assert_allclose(np.abs(res.components), np.eye(2), atol=0.05)
        assert np.all(res.components[np.arange(2), np.arange(2)] > 0)

    def test_duplicated_rows(self):
        rng = np.random.default_rng(1)
        x = rng.normal(size=(6, 5))
        coords = pca_2d(np.vstack([x, x[:2]]))
        np.testing.assert_allclose(coords[-2:], coords[:2], atol=1e-12)

    def test_reconstruction_error(self):
        rng = np.random.default_rng(2)
        x = rng.normal(size=(40, 5)) @ rng.normal(size=(5, 5))
        res = pca(x, 2)
        centred = x - x.mean(axis=0)
        recon = res.coords @ res.components
        err = ((centred - recon) ** 2).sum() / (len(x) - 1)
        vals = np.sort(np.linalg.eigvalsh(np.cov(x, rowvar=False)))
        assert err == pytest.approx(vals[:3].sum(), rel=1e-9)

    def test_rank_deficient(self):
        x = np.column_stack([np.arange(5.0), 2 * np.arange(5.0)])
        with pytest.raises(ValueError):
            pca(x)

    def test_too_small(self):
        with pytest.raises(ValueError):
            pca_2d(np.ones((1, 5)))

    def test_row_order_invariance(self):
        rng = np.random.default_rng(4)
        x = rng.normal(size=(12, 5))
        perm = rng.permutation(12)
        a = pca_2d(x)
        b = pca_2d(x[perm])
        np.testing.assert_allclose(a[perm], b, atol=1e-10)

    def test_sign_convention(self):
        rng = np.random.default_rng(5)
        res = pca(rng.normal(size=(30, 5)))
        for row in res.components:
            first = row[np.flatnonzero(np.abs(row) > 1e-12)[0]]
            assert first > 0
        assert np.isfinite(res.coords).all()
