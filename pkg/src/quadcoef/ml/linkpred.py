"""Link-prediction data pipeline.

Edge records are cut into an "old" graph (first share of records, in time
order or after a seeded shuffle) and a "new" graph made of the remaining
edges between old-graph nodes.  Old-graph non-edges become candidate pairs,
labelled by whether they appear in the new graph, and each pair gets
neighbourhood heuristics plus the local coefficients of both endpoints.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction

import numba
import numpy as np
from scipy.stats import rankdata

from ..graph import Graph, TemporalEdgeList
from ..report import CoefficientReport, format_float, full_report

# -- splitting --------------------------------------------------------------------


@dataclass(frozen=True)
class SplitSpec:
    """How to cut edge records into old and new graphs.

    ``mode`` is ``"temporal"`` (stable sort by timestamp) or ``"shuffled"``
    (permutation drawn from the stream ``(seed, repeat_index)``).
    """

    mode: str = "temporal"
    fraction: float = 0.7
    seed: int | None = None
    repeat_index: int = 0

    def __post_init__(self):
        if self.mode not in ("temporal", "shuffled"):
            raise ValueError(f"unknown split mode {self.mode!r}")
        if not 0 < self.fraction < 1:
            raise ValueError("fraction must lie strictly between 0 and 1")
        if self.mode == "shuffled" and self.seed is None:
            raise ValueError("shuffled splits need a seed")

    def cut(self, n_records: int) -> int:
        """``floor(fraction * n_records)`` computed on the decimal value of ``fraction``."""
        return math.floor(Fraction(repr(float(self.fraction))) * n_records)


class SplitError(ValueError):
    """A split left fewer than two edges on one side."""


@dataclass
class GraphSplit:
    """Old and new graphs over the same node set ``V*``.

    ``nodes`` maps the new dense ids back to ids of the input records.
    Iterating yields ``(old, new)``.
    """

    old: Graph
    new: Graph
    nodes: np.ndarray
    cut: int
    spec: SplitSpec

    def __iter__(self):
        yield self.old
        yield self.new


def _ordered(records: TemporalEdgeList, spec: SplitSpec) -> TemporalEdgeList:
    if spec.mode == "temporal":
        return records.sorted_by_time()
    rng = np.random.default_rng((spec.seed, spec.repeat_index))
    return records.take(rng.permutation(len(records)))


def split_graph(records, spec: SplitSpec) -> GraphSplit:
    """Old graph from the first ``floor(fraction * |records|)`` records; new graph from the rest.

    ``records`` is a :class:`TemporalEdgeList` or a :class:`Graph` (whose
    edges are used in order, with equal timestamps).  The new graph keeps
    only records with both endpoints in the old graph's node set and drops
    pairs already present in the old graph.
    """
    if isinstance(records, Graph):
        records = TemporalEdgeList.from_graph(records)
    rec = _ordered(records, spec)
    cut = spec.cut(len(rec))
    u, v = rec.u.astype(np.int64), rec.v.astype(np.int64)
    keep = u != v
    ou, ov = u[:cut][keep[:cut]], v[:cut][keep[:cut]]
    nodes = np.unique(np.concatenate([ou, ov]))
    remap = np.full(max(records.node_count, int(max(u.max(initial=-1), v.max(initial=-1))) + 1), -1,
                    dtype=np.int64)
    remap[nodes] = np.arange(len(nodes))
    labels = tuple(records.labels[x] for x in nodes) if records.labels else None
    old = Graph.from_edges(len(nodes), np.column_stack([remap[ou], remap[ov]]), labels=labels)
    nu, nv = u[cut:][keep[cut:]], v[cut:][keep[cut:]]
    inside = (remap[nu] >= 0) & (remap[nv] >= 0)
    nu, nv = remap[nu[inside]], remap[nv[inside]]
    fresh = np.array([not old.has_edge(a, b) for a, b in zip(nu, nv)], dtype=bool)
    new = Graph.from_edges(len(nodes), np.column_stack([nu[fresh], nv[fresh]]), labels=labels)
    if old.edge_count < 2 or new.edge_count < 2:
        raise SplitError(
            f"split leaves {old.edge_count} old and {new.edge_count} new edges; need at least 2 each"
        )
    return GraphSplit(old, new, nodes, cut, spec)


# -- candidate pairs ------------------------------------------------------------------


@dataclass
class Candidates:
    """Candidate pairs ``u < v`` in lexicographic order with 0/1 labels."""

    pairs: np.ndarray
    labels: np.ndarray

    def __len__(self):
        return len(self.pairs)

    @property
    def positives(self) -> int:
        return int(self.labels.sum())


def _pair_keys(pairs, n):
    p = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    lo, hi = np.minimum(p[:, 0], p[:, 1]), np.maximum(p[:, 0], p[:, 1])
    return lo * n + hi


def _all_non_edges(g: Graph) -> np.ndarray:
    n = g.node_count
    iu, ju = np.triu_indices(n, k=1)
    keys = iu.astype(np.int64) * n + ju
    return keys[~np.isin(keys, _pair_keys(g.edges(), n))]


def generate_candidates(old: Graph, new: Graph, negatives="all", seed=None) -> Candidates:
    """Positives are new-graph edges absent from the old graph; negatives are
    the remaining old-graph non-edges.

    ``negatives`` is ``"all"`` or a ratio ``r``: then ``r`` times the number
    of positives are drawn uniformly without replacement (every negative if
    fewer exist), using ``seed``.
    """
    if old.node_count != new.node_count:
        raise ValueError("old and new graphs must share a node set")
    n = old.node_count
    old_keys = _pair_keys(old.edges(), n)
    pos = _pair_keys(new.edges(), n)
    pos = np.setdiff1d(pos, old_keys)
    if len(pos) == 0:
        raise ValueError("no positive pairs: the new graph adds no edges")
    total_non = n * (n - 1) // 2 - len(old_keys) - len(pos)
    if isinstance(negatives, str):
        if negatives != "all":
            raise ValueError(f"unknown negative strategy {negatives!r}")
        target = total_non
    else:
        ratio = float(negatives)
        if ratio <= 0:
            raise ValueError("negative ratio must be positive")
        target = min(total_non, int(round(ratio * len(pos))))
    if target >= total_non or 2 * target > total_non:
        neg = np.setdiff1d(_all_non_edges(old), pos)
        if target < len(neg):
            rng = np.random.default_rng(seed)
            neg = np.sort(rng.choice(neg, size=target, replace=False))
    else:
        neg = _sample_non_edges(n, np.union1d(old_keys, pos), target, seed)
    keys = np.concatenate([pos, neg])
    lab = np.concatenate([np.ones(len(pos), dtype=np.int8), np.zeros(len(neg), dtype=np.int8)])
    order = np.argsort(keys, kind="stable")
    keys, lab = keys[order], lab[order]
    return Candidates(np.column_stack([keys // n, keys % n]), lab)


def _sample_non_edges(n, excluded, target, seed):
    """Rejection-sample ``target`` distinct pair keys outside ``excluded``."""
    rng = np.random.default_rng(seed)
    chosen = np.zeros(0, dtype=np.int64)
    while len(chosen) < target:
        batch = max(2 * (target - len(chosen)), 64)
        a = rng.integers(0, n, size=batch)
        b = rng.integers(0, n, size=batch)
        ok = a != b
        keys = np.minimum(a, b)[ok] * n + np.maximum(a, b)[ok]
        keys = keys[~np.isin(keys, excluded) & ~np.isin(keys, chosen)]
        _, first = np.unique(keys, return_index=True)
        keys = keys[np.sort(first)]
        chosen = np.concatenate([chosen, keys[: target - len(chosen)]])
    return np.sort(chosen)


# -- pair features ------------------------------------------------------------------------


PAIR_COLUMNS = ["u", "v", "cn", "aa", "ra", "c_u", "c_v", "e_u", "e_v",
                "i_u", "i_v", "o_u", "o_v", "label"]


@numba.njit(cache=True)
def _neighbourhood_kernel(indptr, indices, inv_log, inv_deg, us, vs):
    out = np.zeros((len(us), 3))
    for t in range(len(us)):
        p, pe = indptr[us[t]], indptr[us[t] + 1]
        q, qe = indptr[vs[t]], indptr[vs[t] + 1]
        cn = 0.0
        aa = 0.0
        ra = 0.0
        while p < pe and q < qe:
            a = indices[p]
            b = indices[q]
            if a < b:
                p += 1
            elif b < a:
                q += 1
            else:
                cn += 1.0
                aa += inv_log[a]
                ra += inv_deg[a]
                p += 1
                q += 1
        out[t, 0] = cn
        out[t, 1] = aa
        out[t, 2] = ra
    return out


@dataclass
class PairFeatures:
    """Feature columns for candidate pairs (one row per pair)."""

    pairs: np.ndarray
    cn: np.ndarray
    aa: np.ndarray
    ra: np.ndarray
    c_u: np.ndarray
    c_v: np.ndarray
    e_u: np.ndarray
    e_v: np.ndarray
    i_u: np.ndarray
    i_v: np.ndarray
    o_u: np.ndarray
    o_v: np.ndarray
    label: np.ndarray | None = None

    def __len__(self):
        return len(self.pairs)

    def matrix(self, columns) -> np.ndarray:
        return np.column_stack([getattr(self, c) for c in columns]).astype(np.float64)


def pair_features(old: Graph, pairs, report: CoefficientReport | None = None, labels=None) -> PairFeatures:
    """Common neighbours, Adamic-Adar, resource allocation and endpoint coefficients.

    Adamic-Adar skips common neighbours of degree 1.  Endpoint coefficients
    come from ``report`` (computed from ``old`` if omitted) with undefined
    values replaced by 0.  Sums run over common neighbours in ascending id.
    """
    if isinstance(pairs, Candidates):
        labels = pairs.labels if labels is None else labels
        pairs = pairs.pairs
    p = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if len(p):
        if p.min() < 0 or p.max() >= old.node_count:
            raise IndexError("pair endpoint outside the graph")
        if np.any(p[:, 0] == p[:, 1]):
            raise ValueError("pair with identical endpoints")
        present = np.isin(_pair_keys(p, old.node_count), _pair_keys(old.edges(), old.node_count))
        if present.any():
            a, b = p[np.argmax(present)]
            raise ValueError(f"pair ({a}, {b}) is an existing edge of the old graph")
    r = report or full_report(old, weighted=False)
    d = np.asarray(old.degrees, dtype=np.float64)
    with np.errstate(divide="ignore"):
        inv_log = np.where(d > 1, 1.0 / np.log(np.maximum(d, 2)), 0.0)
        inv_deg = np.where(d > 0, 1.0 / np.maximum(d, 1), 0.0)
    nb = _neighbourhood_kernel(old.indptr, old.indices, inv_log, inv_deg, p[:, 0].copy(), p[:, 1].copy())
    c, e, i, o = (r.filled(k) for k in "CEIO")
    u, v = p[:, 0], p[:, 1]
    return PairFeatures(
        pairs=p,
        cn=nb[:, 0],
        aa=nb[:, 1],
        ra=nb[:, 2],
        c_u=c[u], c_v=c[v],
        e_u=e[u], e_v=e[v],
        i_u=i[u], i_v=i[v],
        o_u=o[u], o_v=o[v],
        label=None if labels is None else np.asarray(labels, dtype=np.int8),
    )


def write_pair_features_csv(feats: PairFeatures, g: Graph, fh, seed=None, repeat_index=0):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(PAIR_COLUMNS + ["seed", "repeat_index"])
    cols = [feats.cn, feats.aa, feats.ra, feats.c_u, feats.c_v, feats.e_u, feats.e_v,
            feats.i_u, feats.i_v, feats.o_u, feats.o_v]
    labs = g.labels
    for t, (a, b) in enumerate(feats.pairs):
        row = [labs[a], labs[b]] + [format_float(col[t]) for col in cols]
        row.append("" if feats.label is None else int(feats.label[t]))
        row += ["" if seed is None else seed, repeat_index]
        w.writerow(row)


# -- scoring ------------------------------------------------------------------------------


def roc_auc(scores, labels) -> float:
    """Probability that a random positive outscores a random negative (ties count 1/2)."""
    s = np.asarray(scores, dtype=np.float64)
    y = np.asarray(labels).astype(bool)
    if s.shape != y.shape:
        raise ValueError("scores and labels must have the same length")
    n_pos = int(y.sum())
    n_neg = len(y) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("ROC-AUC needs both positive and negative labels")
    ranks = rankdata(s)
    return float((ranks[y].sum() - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg))


@dataclass
class LogisticModel:
    mean: np.ndarray
    scale: np.ndarray
    coef: np.ndarray
    intercept: float
    iterations: int


def train_smoke_classifier(x, y, iterations=500, learning_rate=0.5, l2=1e-4) -> LogisticModel:
    """Logistic regression by full-batch gradient descent from zero weights.

    Features are standardised with the training mean and standard deviation.
    The procedure has no randomness, so equal inputs give equal models.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if len(np.unique(y)) < 2:
        raise ValueError("training data must contain both classes")
    mean = x.mean(axis=0)
    scale = x.std(axis=0)
    scale = np.where(scale > 0, scale, 1.0)
    z = (x - mean) / scale
    w = np.zeros(z.shape[1])
    b = 0.0
    n = len(y)
    for _ in range(iterations):
        p = _sigmoid(z @ w + b)
        err = p - y
        w -= learning_rate * (z.T @ err / n + l2 * w)
        b -= learning_rate * err.mean()
    return LogisticModel(mean, scale, w, float(b), iterations)


def _sigmoid(t):
    return 0.5 * (1.0 + np.tanh(0.5 * t))


def score(model: LogisticModel, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    return _sigmoid(((x - model.mean) / model.scale) @ model.coef + model.intercept)


# -- experiment ---------------------------------------------------------------------------

BASELINE = ("cn", "aa", "ra", "c_u", "c_v", "e_u", "e_v")
FEATURE_SETS = {
    "baseline": BASELINE,
    "baseline+I": BASELINE + ("i_u", "i_v"),
    "baseline+O": BASELINE + ("o_u", "o_v"),
    "baseline+I+O": BASELINE + ("i_u", "i_v", "o_u", "o_v"),
}


@dataclass
class LinkPredictionRun:
    """Test-set ROC-AUC per feature set for one split."""

    repeat_index: int
    seed: int | None
    auc: dict
    test: PairFeatures
    test_graph: Graph
    train_positives: int
    test_positives: int


def _labelled_features(old, new, negatives, seed):
    cand = generate_candidates(old, new, negatives, seed)
    return pair_features(old, cand)


def run_link_prediction(records, spec: SplitSpec, negatives="all", iterations=500) -> LinkPredictionRun:
    """Fit the smoke classifier on a split of the old graph, score the real split.

    The test set is the old/new split of ``records``.  The training set
    repeats the same split inside the old graph's records, so training never
    sees the new-graph edges.
    """
    if isinstance(records, Graph):
        records = TemporalEdgeList.from_graph(records)
    split = split_graph(records, spec)
    seed = spec.seed if spec.seed is not None else 0
    test = _labelled_features(split.old, split.new, negatives, (seed, spec.repeat_index, 1))
    # old-graph records, renumbered into V*, in the order they were cut
    ordered = _ordered(records, spec).take(np.arange(split.cut))
    remap = {int(x): t for t, x in enumerate(split.nodes)}
    keep = ordered.u != ordered.v
    inner = TemporalEdgeList(
        np.array([remap[int(x)] for x in ordered.u[keep]], dtype=np.int64),
        np.array([remap[int(x)] for x in ordered.v[keep]], dtype=np.int64),
        np.arange(int(keep.sum()), dtype=np.int64),
        split.old.labels,
    )
    inner_spec = SplitSpec("temporal", spec.fraction, spec.seed, spec.repeat_index)
    tr = split_graph(inner, inner_spec)
    train = _labelled_features(tr.old, tr.new, negatives, (seed, spec.repeat_index, 0))
    auc = {}
    for name, cols in FEATURE_SETS.items():
        model = train_smoke_classifier(train.matrix(cols), train.label, iterations=iterations)
        auc[name] = roc_auc(score(model, test.matrix(cols)), test.label)
    return LinkPredictionRun(spec.repeat_index, spec.seed, auc, test, split.old,
                             int(train.label.sum()), int(test.label.sum()))
