"""Clustering and closure coefficients (triangle formation).

Per-node values are undefined (NaN) when the node has no open triad in the
relevant role; averages count undefined values as zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import EmptyGraphError, Graph


def _common(a, b):
    return len(np.intersect1d(a, b, assume_unique=True))


def _ratio(num, den):
    num = np.asarray(num, dtype=np.float64)
    den = np.asarray(den, dtype=np.float64)
    out = np.full(num.shape, np.nan)
    np.divide(num, den, out=out, where=den > 0)
    return out


@dataclass
class TriadCounts:
    """Per-node triangle statistics.

    ``closed`` is the shared numerator ``sum_j |N(i) & N(j)|`` which equals
    ``2 * triangles``; ``otc``/``ote`` count open triads with the node as
    centre/end.
    """

    triangles: np.ndarray
    closed: np.ndarray
    otc: np.ndarray
    ote: np.ndarray


def triad_counts(g: Graph) -> TriadCounts:
    a = _unweighted_adjacency(g)
    d = g.degrees.astype(np.int64)
    closed = np.asarray((a @ a).multiply(a).sum(axis=1), dtype=np.int64).ravel()
    ote = a @ (d - 1) if g.node_count else np.zeros(0, dtype=np.int64)
    return TriadCounts(
        triangles=closed // 2,
        closed=closed,
        otc=d * (d - 1) // 2,
        ote=np.asarray(ote, dtype=np.int64).ravel(),
    )


def _unweighted_adjacency(g):
    return g.adjacency if g.weights is None else g.unweighted().adjacency


def local_clustering(g: Graph, i: int) -> float:
    """``T(i) / OTC(i)``; NaN when ``d_i < 2``."""
    nb = g.neighbors(i)
    d = len(nb)
    if d < 2:
        return float("nan")
    closed = sum(_common(nb, g.neighbors(j)) for j in nb)
    return (closed / 2) / (d * (d - 1) / 2)


def local_closure(g: Graph, i: int) -> float:
    """``2 T(i) / OTE(i)``; NaN when no neighbour has another neighbour."""
    nb = g.neighbors(i)
    ote = sum(g.degree(j) - 1 for j in nb)
    if ote == 0:
        return float("nan")
    closed = sum(_common(nb, g.neighbors(j)) for j in nb)
    return closed / ote


def clustering(g: Graph, counts: TriadCounts | None = None) -> np.ndarray:
    c = counts or triad_counts(g)
    return _ratio(c.triangles, c.otc)


def closure(g: Graph, counts: TriadCounts | None = None) -> np.ndarray:
    c = counts or triad_counts(g)
    return _ratio(c.closed, c.ote)


def _mean_zero_filled(values):
    if len(values) == 0:
        raise EmptyGraphError("average over an empty graph")
    return float(np.nan_to_num(values, nan=0.0).mean())


def average_clustering(g: Graph, counts: TriadCounts | None = None) -> float:
    return _mean_zero_filled(clustering(g, counts))


def average_closure(g: Graph, counts: TriadCounts | None = None) -> float:
    return _mean_zero_filled(closure(g, counts))


def global_clustering(g: Graph, counts: TriadCounts | None = None) -> float:
    """Summed triangle numerators over summed ``d_i (d_i - 1)``; NaN if no open triad."""
    c = counts or triad_counts(g)
    d = g.degrees.astype(np.int64)
    den = int((d * (d - 1)).sum())
    return int(c.closed.sum()) / den if den else float("nan")


def global_closure(g: Graph, counts: TriadCounts | None = None) -> float:
    """Summed triangle numerators over summed end-node open triads."""
    c = counts or triad_counts(g)
    den = int(c.ote.sum())
    return int(c.closed.sum()) / den if den else float("nan")
