"""K-means network classification over coefficient feature vectors.

Lloyd's algorithm with random-point initialisation is restarted many times
and the run that best matches the known categories (highest V-measure) is
kept.  PCA to two dimensions gives plotting coordinates.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..report import format_float

FEATURE_NAMES = ("mean_degree", "avg_clustering", "avg_closure", "avg_i_quad", "avg_o_quad")


@dataclass
class LabeledFeatureMatrix:
    """Rows of network features with their category labels.

    ``values`` holds the standardised features (zero mean, unit variance per
    column) unless ``standardize=False``; ``mean`` and ``scale`` keep the
    parameters so raw features can be recovered.
    """

    names: list[str]
    raw: np.ndarray
    labels: list
    feature_names: tuple = FEATURE_NAMES
    standardize: bool = True
    values: np.ndarray = field(init=False)
    mean: np.ndarray = field(init=False)
    scale: np.ndarray = field(init=False)

    def __post_init__(self):
        self.raw = np.asarray(self.raw, dtype=np.float64)
        if self.raw.ndim != 2 or len(self.raw) != len(self.names) or len(self.names) != len(self.labels):
            raise ValueError("names, labels and feature rows must align")
        if self.standardize:
            self.values, self.mean, self.scale = standardize(self.raw)
        else:
            self.values = self.raw.copy()
            self.mean = np.zeros(self.raw.shape[1])
            self.scale = np.ones(self.raw.shape[1])

    @classmethod
    def from_vectors(cls, names, vectors, labels, with_quads=True, standardize=True):
        raw = np.array([v.as_array(with_quads) for v in vectors])
        feats = FEATURE_NAMES if with_quads else FEATURE_NAMES[:3]
        return cls(list(names), raw, list(labels), feats, standardize)

    def __len__(self):
        return len(self.names)


def standardize(x):
    """Column-wise z-scores; constant columns are centred but not scaled."""
    x = np.asarray(x, dtype=np.float64)
    mean = x.mean(axis=0)
    scale = x.std(axis=0)
    scale = np.where(scale > 0, scale, 1.0)
    return (x - mean) / scale, mean, scale


# -- clustering quality ---------------------------------------------------------


def _entropy(counts):
    p = counts[counts > 0] / counts.sum()
    return float(-(p * np.log(p)).sum())


def contingency(assignments, labels):
    _, a = np.unique(np.asarray(assignments), return_inverse=True)
    _, b = np.unique(np.asarray(labels), return_inverse=True)
    table = np.zeros((b.max(initial=-1) + 1, a.max(initial=-1) + 1), dtype=np.int64)
    np.add.at(table, (b, a), 1)
    return table


def cluster_quality(assignments, labels):
    """Homogeneity, completeness and V-measure of ``assignments`` against ``labels``.

    Homogeneity is ``1 - H(class | cluster) / H(class)`` (1 when H(class) = 0),
    completeness ``1 - H(cluster | class) / H(cluster)`` (1 when H(cluster) = 0)
    and V-measure their harmonic mean (0 when either is 0).
    """
    assignments = np.asarray(assignments)
    labels = np.asarray(labels)
    if assignments.shape != labels.shape:
        raise ValueError("assignments and labels must have the same length")
    if assignments.size == 0:
        raise ValueError("cluster quality of an empty labelling")
    table = contingency(assignments, labels).astype(np.float64)
    n = table.sum()
    h_class = _entropy(table.sum(axis=1))
    h_cluster = _entropy(table.sum(axis=0))
    nz = table > 0
    joint = table[nz] / n
    # H(class | cluster) = -sum p(c,k) log(p(c,k) / p(k))
    p_cluster = np.broadcast_to(table.sum(axis=0) / n, table.shape)[nz]
    p_class = np.broadcast_to((table.sum(axis=1) / n)[:, None], table.shape)[nz]
    h_class_given_cluster = float(-(joint * np.log(joint / p_cluster)).sum())
    h_cluster_given_class = float(-(joint * np.log(joint / p_class)).sum())
    hom = 1.0 if h_class == 0 else 1.0 - h_class_given_cluster / h_class
    com = 1.0 if h_cluster == 0 else 1.0 - h_cluster_given_class / h_cluster
    hom = min(max(hom, 0.0), 1.0)
    com = min(max(com, 0.0), 1.0)
    v = 0.0 if hom + com == 0 else 2 * hom * com / (hom + com)
    return hom, com, v


# -- k-means ----------------------------------------------------------------------


@dataclass
class LloydRun:
    assignments: np.ndarray
    centroids: np.ndarray
    inertia: float
    iterations: int
    history: list


def lloyd(x, centroids, max_iter=300):
    """Lloyd iterations from the given initial centroids.

    A cluster left empty after an assignment step is moved onto the point
    farthest from its current centroid.  ``history`` records the
    within-cluster sum of squares after every assignment step.
    """
    x = np.asarray(x, dtype=np.float64)
    c = np.array(centroids, dtype=np.float64)
    k = len(c)
    history = []
    assign = None
    it = 0
    for it in range(1, max_iter + 1):
        dist = ((x[:, None, :] - c[None, :, :]) ** 2).sum(axis=2)
        new = dist.argmin(axis=1)
        counts = np.bincount(new, minlength=k)
        for empty in np.flatnonzero(counts == 0):
            own = dist[np.arange(len(x)), new]
            # only steal from clusters that keep at least one point
            donors = counts[new] > 1
            if not donors.any():
                break
            far = int(np.flatnonzero(donors)[own[donors].argmax()])
            counts[new[far]] -= 1
            new[far] = empty
            counts[empty] = 1
            c[empty] = x[far]
            dist[:, empty] = ((x - c[empty]) ** 2).sum(axis=1)
        history.append(float(((x - c[new]) ** 2).sum()))
        converged = assign is not None and np.array_equal(new, assign)
        assign = new
        for j in range(k):
            members = x[assign == j]
            if len(members):
                c[j] = members.mean(axis=0)
        if converged:
            break
    inertia = float(((x - c[assign]) ** 2).sum())
    history.append(inertia)
    return LloydRun(assign, c, inertia, it, history)


@dataclass
class ClusteringResult:
    assignments: np.ndarray
    centroids: np.ndarray
    homogeneity: float
    completeness: float
    v_measure: float
    inertia: float
    seed: object
    restarts: int
    best_restart: int
    iterations: int


def _restart(x, k, max_iter, seed, r):
    rng = np.random.default_rng((seed, r))
    init = x[rng.choice(len(x), size=k, replace=False)]
    return lloyd(x, init, max_iter)


def kmeans(matrix, k, restarts=1000, max_iter=300, seed=0, labels=None, jobs=1):
    """Best-of-``restarts`` K-means scored by V-measure against the labels.

    ``matrix`` is a :class:`LabeledFeatureMatrix` (its standardised values
    and labels are used) or a plain array together with ``labels``.  Each
    restart draws ``k`` distinct rows as initial centroids from its own
    stream ``(seed, restart)``.  Ties in V-measure go to the lower
    within-cluster sum of squares, then to the earlier restart, so the
    result does not depend on ``jobs`` (threads running restarts).
    """
    if isinstance(matrix, LabeledFeatureMatrix):
        x, labels = matrix.values, matrix.labels
    else:
        x = np.asarray(matrix, dtype=np.float64)
    if labels is None:
        raise ValueError("kmeans selection needs ground-truth labels")
    if k > len(x):
        raise ValueError(f"k={k} exceeds the number of rows ({len(x)})")
    if k < 1 or restarts < 1:
        raise ValueError("k and restarts must be at least 1")
    best = None
    best_key = None
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            runs = pool.map(lambda r: _restart(x, k, max_iter, seed, r), range(restarts))
            runs = list(runs)
    else:
        runs = (_restart(x, k, max_iter, seed, r) for r in range(restarts))
    for r, run in enumerate(runs):
        h, c, v = cluster_quality(run.assignments, labels)
        key = (-v, run.inertia, r)
        if best_key is None or key < best_key:
            best_key = key
            best = (run, h, c, v, r)
    run, h, c, v, r = best
    return ClusteringResult(
        assignments=run.assignments,
        centroids=run.centroids,
        homogeneity=h,
        completeness=c,
        v_measure=v,
        inertia=run.inertia,
        seed=seed,
        restarts=restarts,
        best_restart=r,
        iterations=run.iterations,
    )


# -- PCA ------------------------------------------------------------------------------


@dataclass
class PCAResult:
    coords: np.ndarray
    components: np.ndarray
    eigenvalues: np.ndarray
    mean: np.ndarray


def pca(x, n_components=2, standardize_features=False):
    """Project onto the leading eigenvectors of the sample covariance.

    Each eigenvector is signed so that its first non-zero entry is positive.
    ``eigenvalues`` holds the full spectrum in descending order.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 2 or x.shape[1] < n_components:
        raise ValueError(f"PCA needs at least 2 rows and {n_components} columns")
    if standardize_features:
        x = standardize(x)[0]
    mean = x.mean(axis=0)
    cov = np.cov(x - mean, rowvar=False)
    vals, vecs = np.linalg.eigh(np.atleast_2d(cov))
    order = np.argsort(vals)[::-1]
    vals, vecs = vals[order], vecs[:, order]
    tol = max(vals[0], 0.0) * 1e-12 + 1e-300
    if np.sum(vals > tol) < n_components:
        raise ValueError("covariance rank is below the number of components")
    comps = vecs[:, :n_components].T.copy()
    for row in comps:
        nz = np.flatnonzero(np.abs(row) > 1e-12)
        if len(nz) and row[nz[0]] < 0:
            row *= -1
    return PCAResult(coords=(x - mean) @ comps.T, components=comps, eigenvalues=vals, mean=mean)


def pca_2d(matrix, standardize_features=None):
    """Two-dimensional PCA coordinates, one ``(x, y)`` row per input row.

    A :class:`LabeledFeatureMatrix` is projected from its (already
    standardised) values; a plain array is standardised first unless
    ``standardize_features=False``.
    """
    if isinstance(matrix, LabeledFeatureMatrix):
        return pca(matrix.values, 2, standardize_features=bool(standardize_features)).coords
    if standardize_features is None:
        standardize_features = True
    return pca(matrix, 2, standardize_features=standardize_features).coords


def write_clustering_csv(matrix: LabeledFeatureMatrix, result: ClusteringResult, coords, fh,
                         repeat_index=0):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["network", "category", "cluster", "pca_x", "pca_y", "seed", "repeat_index"])
    for name, lab, cl, (px, py) in zip(matrix.names, matrix.labels, result.assignments, coords):
        w.writerow([name, lab, int(cl), format_float(px), format_float(py), result.seed, repeat_index])
