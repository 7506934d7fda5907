"""Undirected simple graphs, edge-list ingestion and sampling.

Nodes are dense integer ids ``0..n-1``; the original labels read from a file
are kept in ``Graph.labels``.  Adjacency is stored in CSR form with sorted
neighbour lists, so neighbour intersections are linear merges and every
derived output has a deterministic order.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp


class EdgeListParseError(ValueError):
    """Raised for a malformed line in an edge-list file."""

    def __init__(self, path, lineno, line, reason):
        self.path = str(path)
        self.lineno = lineno
        self.line = line
        super().__init__(f"{path}:{lineno}: {reason}: {line!r}")


class EmptyGraphError(ValueError):
    """Raised when an operation needs at least one node or edge."""


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


class Graph:
    """Immutable undirected simple graph with optional edge weights.

    Parameters
    ----------
    indptr, indices : array_like
        CSR adjacency. Each row must be strictly increasing, symmetric and
        free of self-loops.
    weights : array_like, optional
        Per-entry weights aligned with ``indices``; must be symmetric and lie
        in ``(0, 1]``.
    labels : sequence of str, optional
        External node labels. Defaults to ``str(i)``.

    Most callers should use :meth:`from_edges` or :func:`load_edge_list`.
    """

    def __init__(self, indptr, indices, weights=None, labels=None, *, check=True):
        self.indptr = _frozen(np.asarray(indptr, dtype=np.int64))
        self.indices = _frozen(np.asarray(indices, dtype=np.int64))
        self.weights = None if weights is None else _frozen(np.asarray(weights, dtype=np.float64))
        n = len(self.indptr) - 1
        if labels is None:
            labels = [str(i) for i in range(n)]
        self.labels = tuple(labels)
        if check:
            self._validate()

    def _validate(self):
        n = self.node_count
        if len(self.labels) != n:
            raise ValueError("labels length does not match node count")
        if self.indptr[0] != 0 or np.any(np.diff(self.indptr) < 0):
            raise ValueError("indptr must start at 0 and be non-decreasing")
        if self.indptr[-1] != len(self.indices):
            raise ValueError("indptr[-1] must equal len(indices)")
        if len(self.indices) and (self.indices.min() < 0 or self.indices.max() >= n):
            raise ValueError("neighbour id out of range")
        rows = self._row_ids
        if np.any(rows == self.indices):
            raise ValueError("self-loops are not allowed")
        same_row = rows[1:] == rows[:-1]
        if np.any(self.indices[1:][same_row] <= self.indices[:-1][same_row]):
            raise ValueError("neighbour lists must be strictly increasing")
        a = self.adjacency
        if (a != a.T).nnz:
            raise ValueError("adjacency must be symmetric (with equal weights)")
        if self.weights is not None:
            if len(self.weights) != len(self.indices):
                raise ValueError("weights must align with indices")
            if np.any(~(self.weights > 0)) or np.any(self.weights > 1):
                raise ValueError("weights must lie in (0, 1]")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, n, edges, weights=None, labels=None):
        """Build a graph on ``n`` nodes from an ``(m, 2)`` edge array.

        Self-loops are dropped, direction is ignored and parallel edges are
        collapsed; when weights are given the maximum weight is kept.
        """
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if len(e) and (e.min() < 0 or e.max() >= n):
            raise ValueError("edge endpoint out of range")
        w = None if weights is None else np.asarray(weights, dtype=np.float64).reshape(-1)
        keep = e[:, 0] != e[:, 1]
        e = e[keep]
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        if w is not None:
            w = w[keep]
            # sort by (lo, hi, -w) so the first of each duplicate run is the max weight
            order = np.lexsort((-w, hi, lo))
        else:
            order = np.lexsort((hi, lo))
        lo, hi = lo[order], hi[order]
        first = np.ones(len(lo), dtype=bool)
        first[1:] = (lo[1:] != lo[:-1]) | (hi[1:] != hi[:-1])
        lo, hi = lo[first], hi[first]
        if w is not None:
            w = w[order][first]

        rows = np.concatenate([lo, hi])
        cols = np.concatenate([hi, lo])
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        vals = None if w is None else np.concatenate([w, w])[order]
        return cls(indptr, cols, vals, labels)

    @classmethod
    def empty(cls, n=0, labels=None):
        return cls(np.zeros(n + 1, dtype=np.int64), np.zeros(0, dtype=np.int64), None, labels)

    def with_weights(self, weights):
        """Return a copy carrying ``weights`` (aligned with ``indices``)."""
        return Graph(self.indptr, self.indices, weights, self.labels)

    def unit_weighted(self):
        return self.with_weights(np.ones(len(self.indices)))

    def unweighted(self):
        return Graph(self.indptr, self.indices, None, self.labels, check=False)

    # -- queries ------------------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @property
    def is_weighted(self) -> bool:
        return self.weights is not None

    @cached_property
    def degrees(self) -> np.ndarray:
        return _frozen(np.diff(self.indptr))

    @cached_property
    def _row_ids(self):
        return np.repeat(np.arange(self.node_count, dtype=np.int64), self.degrees)

    def _check(self, i):
        if not 0 <= i < self.node_count:
            raise IndexError(f"node {i} out of range for graph with {self.node_count} nodes")

    def degree(self, i) -> int:
        self._check(i)
        return int(self.indptr[i + 1] - self.indptr[i])

    def neighbors(self, i) -> np.ndarray:
        """Sorted neighbour ids of ``i`` (a read-only view)."""
        self._check(i)
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def neighbor_weights(self, i) -> np.ndarray:
        self._check(i)
        if self.weights is None:
            raise ValueError("graph is unweighted")
        return self.weights[self.indptr[i]:self.indptr[i + 1]]

    def has_edge(self, i, j) -> bool:
        self._check(j)
        nb = self.neighbors(i)
        pos = np.searchsorted(nb, j)
        return bool(pos < len(nb) and nb[pos] == j)

    def weight(self, i, j) -> float:
        """Weight of edge ``(i, j)``; 0.0 if absent, 1.0 on unweighted graphs."""
        nb = self.neighbors(i)
        self._check(j)
        pos = np.searchsorted(nb, j)
        if pos < len(nb) and nb[pos] == j:
            return 1.0 if self.weights is None else float(self.weights[self.indptr[i] + pos])
        return 0.0

    def edges(self) -> np.ndarray:
        """``(m, 2)`` array of edges with ``u < v``, sorted lexicographically."""
        rows = self._row_ids
        mask = rows < self.indices
        return np.column_stack([rows[mask], self.indices[mask]])

    def edge_weights(self) -> np.ndarray:
        """Weights aligned with :meth:`edges`."""
        if self.weights is None:
            return np.ones(self.edge_count)
        return self.weights[self._row_ids < self.indices]

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """Symmetric CSR matrix; int64 ones, or float64 weights if weighted."""
        n = self.node_count
        data = np.ones(len(self.indices), dtype=np.int64) if self.weights is None else np.array(self.weights)
        return sp.csr_matrix((data, np.array(self.indices), np.array(self.indptr)), shape=(n, n))

    def index_of(self, label) -> int:
        return self._label_index[str(label)]

    @cached_property
    def _label_index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    def __repr__(self):
        w = ", weighted" if self.is_weighted else ""
        return f"Graph(n={self.node_count}, m={self.edge_count}{w})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        if self.labels != other.labels or not np.array_equal(self.indptr, other.indptr):
            return False
        if not np.array_equal(self.indices, other.indices):
            return False
        if (self.weights is None) != (other.weights is None):
            return False
        return self.weights is None or np.array_equal(self.weights, other.weights)

    __hash__ = None


def induced_subgraph(g: Graph, nodes) -> Graph:
    """Subgraph induced by ``nodes``; new ids follow ascending original id."""
    nodes = np.unique(np.asarray(nodes, dtype=np.int64))
    a = g.adjacency[nodes][:, nodes].tocsr()
    a.sort_indices()
    weights = None if g.weights is None else a.data.astype(np.float64)
    labels = [g.labels[i] for i in nodes]
    return Graph(a.indptr, a.indices, weights, labels, check=False)


# -- degree statistics --------------------------------------------------------


@dataclass(frozen=True)
class DegreeStats:
    mean_degree: float
    size_biased_mean: float
    edge_count: int


def degree_stats(g: Graph) -> DegreeStats:
    """Mean degree <k> = 2m/|V| and size-biased mean (sum d^2)/(sum d)."""
    if g.edge_count == 0:
        raise EmptyGraphError("degree statistics need at least one edge")
    d = g.degrees.astype(np.int64)
    total = int(d.sum())
    return DegreeStats(
        mean_degree=total / g.node_count,
        size_biased_mean=int((d * d).sum()) / total,
        edge_count=g.edge_count,
    )


# -- sampling -----------------------------------------------------------------


def bfs_sample(g: Graph, target_nodes: int, seed) -> Graph:
    """Induced subgraph on nodes collected by randomised breadth-first search.

    The search starts at a uniformly random node and visits neighbours in a
    random order. If the frontier empties before ``target_nodes`` are
    collected (a disconnected graph), it restarts from a random unvisited
    node.
    """
    if target_nodes <= 0:
        raise ValueError("target_nodes must be positive")
    n = g.node_count
    if target_nodes >= n:
        return induced_subgraph(g, np.arange(n))
    rng = np.random.default_rng(seed)
    visited = np.zeros(n, dtype=bool)
    collected = 0
    restart_order = rng.permutation(n)
    restart_pos = 0
    queue = deque()
    while collected < target_nodes:
        if not queue:
            while visited[restart_order[restart_pos]]:
                restart_pos += 1
            start = int(restart_order[restart_pos])
            visited[start] = True
            collected += 1
            queue.append(start)
            continue
        u = queue.popleft()
        for v in rng.permutation(g.neighbors(u)):
            if collected == target_nodes:
                break
            if not visited[v]:
                visited[v] = True
                collected += 1
                queue.append(int(v))
    return induced_subgraph(g, np.flatnonzero(visited))


# -- edge-list files ----------------------------------------------------------


@dataclass(frozen=True)
class TemporalEdgeList:
    """Timestamped edge records ``(u, v, t)`` in file order.

    Duplicate pairs are allowed here; they collapse once a :class:`Graph` is
    built from a slice of the records.
    """

    u: np.ndarray
    v: np.ndarray
    t: np.ndarray
    labels: tuple

    def __post_init__(self):
        if not (len(self.u) == len(self.v) == len(self.t)):
            raise ValueError("record arrays must have equal length")

    def __len__(self):
        return len(self.u)

    @property
    def node_count(self):
        return len(self.labels)

    def sorted_by_time(self) -> "TemporalEdgeList":
        """Stable sort by timestamp; ties keep file order."""
        order = np.argsort(self.t, kind="stable")
        return TemporalEdgeList(self.u[order], self.v[order], self.t[order], self.labels)

    def take(self, index) -> "TemporalEdgeList":
        return TemporalEdgeList(self.u[index], self.v[index], self.t[index], self.labels)

    def to_graph(self) -> Graph:
        return Graph.from_edges(self.node_count, np.column_stack([self.u, self.v]), labels=self.labels)

    @classmethod
    def from_graph(cls, g: Graph) -> "TemporalEdgeList":
        """Records for each edge of ``g`` with all timestamps zero."""
        e = g.edges()
        return cls(e[:, 0].copy(), e[:, 1].copy(), np.zeros(len(e), dtype=np.int64), g.labels)


def _parse_lines(path):
    with open(path, encoding="utf-8", newline=None) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line[0] in "#%":
                continue
            yield lineno, line, line.split()


def load_edge_list(path, weighted=False, temporal=False, dedupe=True):
    """Read a whitespace-separated edge list.

    Accepted line layouts: ``u v`` (extra trailing columns are ignored unless
    ``weighted``/``temporal`` give them a meaning), ``u v w`` when weighted,
    and ``u v t`` or ``u v w t`` when temporal. Lines starting with ``#`` or
    ``%`` are comments. Labels are arbitrary strings; ids are assigned in
    order of first appearance.

    Returns a :class:`Graph` (self-loops dropped, parallel edges collapsed,
    weights divided by their global maximum) or, with ``temporal=True``, a
    :class:`TemporalEdgeList`. With ``dedupe`` a temporal list keeps only the
    first record of a repeated pair.
    """
    path = Path(path)
    index = {}
    us, vs, ws, ts = [], [], [], []

    def node(tok):
        i = index.get(tok)
        if i is None:
            i = index[tok] = len(index)
        return i

    for lineno, line, tok in _parse_lines(path):
        if len(tok) < 2:
            raise EdgeListParseError(path, lineno, line, "expected at least 2 columns")
        w = 1.0
        t = 0
        try:
            if temporal:
                if len(tok) == 3:
                    t = int(tok[2])
                elif len(tok) == 4:
                    w = float(tok[2])
                    t = int(tok[3])
                else:
                    raise EdgeListParseError(path, lineno, line, "temporal lines need 3 or 4 columns")
            elif weighted:
                if len(tok) != 3:
                    raise EdgeListParseError(path, lineno, line, "weighted lines need 3 columns")
                w = float(tok[2])
        except ValueError as exc:
            if isinstance(exc, EdgeListParseError):
                raise
            raise EdgeListParseError(path, lineno, line, "non-numeric weight or timestamp") from None
        if weighted and not (math.isfinite(w) and w > 0):
            raise EdgeListParseError(path, lineno, line, "weights must be positive and finite")
        a, b = node(tok[0]), node(tok[1])
        us.append(a)
        vs.append(b)
        ws.append(w)
        ts.append(t)

    labels = tuple(index)
    u = np.asarray(us, dtype=np.int64)
    v = np.asarray(vs, dtype=np.int64)
    if temporal:
        t = np.asarray(ts, dtype=np.int64)
        keep = u != v
        u, v, t = u[keep], v[keep], t[keep]
        if dedupe and len(u):
            key = np.minimum(u, v) * max(len(labels), 1) + np.maximum(u, v)
            _, first = np.unique(key, return_index=True)
            first.sort()
            u, v, t = u[first], v[first], t[first]
        return TemporalEdgeList(u, v, t, labels)

    edges = np.column_stack([u, v]) if len(u) else np.zeros((0, 2), dtype=np.int64)
    if weighted:
        w = np.asarray(ws, dtype=np.float64)
        keep = u != v
        if keep.any():
            w = w / w[keep].max()
        return Graph.from_edges(len(labels), edges, weights=w, labels=labels)
    return Graph.from_edges(len(labels), edges, labels=labels)


def write_edge_list(g: Graph, path):
    """Write ``g`` as ``label label [weight]`` lines."""
    with open(path, "w", encoding="utf-8") as fh:
        ws = g.edge_weights()
        for (a, b), w in zip(g.edges(), ws):
            if g.is_weighted:
                fh.write(f"{g.labels[a]} {g.labels[b]} {w!r}\n")
            else:
                fh.write(f"{g.labels[a]} {g.labels[b]}\n")


def graph_from_edge_pairs(pairs: Iterable[Sequence], weights=None) -> Graph:
    """Convenience builder from label pairs, e.g. ``[("a", "b"), ("b", "c")]``."""
    index = {}
    e = []
    for a, b in pairs:
        for x in (str(a), str(b)):
            if x not in index:
                index[x] = len(index)
        e.append((index[str(a)], index[str(b)]))
    return Graph.from_edges(len(index), np.asarray(e, dtype=np.int64).reshape(-1, 2), weights, tuple(index))
