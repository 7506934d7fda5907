"""i-quad and o-quad coefficients (quadrangle formation).

For a focal node ``i`` an open quadriad is a length-3 path; ``i`` is either
one of its two inner nodes or one of its two outer (end) nodes.  Both
coefficients share the numerator

    sum_{j in N(i)} sum_{k in N(j) - i} |N(k) & N(i) - j|  =  2 Q(i)

and differ in the denominator:

    OQI(i) = sum_j sum_k |N(i) - j - k|      (i inner)
    OQO(i) = sum_j sum_k |N(k) - j - i|      (i outer)

Whole-graph values are computed from sparse matrix products in exact
integer arithmetic.  With ``c_ik`` the number of common neighbours of i and
k, the numerator is ``sum_{k != i} c_ik (c_ik - 1)``, ``OQI = (d_i - 1) OTE(i)
- 2T(i)`` and ``OQO = sum_j OTE(j) - d_i (d_i - 1) - 2T(i)``.  The per-node
functions evaluate the triple sums literally and are kept as a second
route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .graph import Graph
from .triangles import TriadCounts, _mean_zero_filled, _ratio, _unweighted_adjacency, triad_counts


@dataclass
class QuadCounts:
    """Per-node quadrangle statistics; ``closed`` is the shared numerator ``2 Q``."""

    quadrangles: np.ndarray
    closed: np.ndarray
    oqi: np.ndarray
    oqo: np.ndarray


def quad_counts(g: Graph, triads: TriadCounts | None = None) -> QuadCounts:
    t = triads or triad_counts(g)
    a = _unweighted_adjacency(g)
    d = g.degrees.astype(np.int64)
    if g.node_count == 0:
        z = np.zeros(0, dtype=np.int64)
        return QuadCounts(z, z, z, z)
    paths2 = (a @ a).tocsr()
    paths2.data = paths2.data * (paths2.data - 1)
    # diagonal entries are c_ii = d_i
    closed = np.asarray(paths2.sum(axis=1), dtype=np.int64).ravel() - d * (d - 1)
    oqi = (d - 1) * t.ote - t.closed
    oqo = np.asarray(a @ t.ote, dtype=np.int64).ravel() - d * (d - 1) - t.closed
    return QuadCounts(quadrangles=closed // 2, closed=closed, oqi=oqi, oqo=oqo)


# -- literal per-node evaluation --------------------------------------------


def _minus(values, *drop):
    ids = set(int(x) for x in values)
    for x in drop:
        ids.discard(int(x))
    return ids


def quad_numerator(g: Graph, i: int) -> int:
    """``sum_{j in N(i)} sum_{k in N(j)-i} |N(k) & N(i) - j|``."""
    ni = set(int(x) for x in g.neighbors(i))
    total = 0
    for j in g.neighbors(i):
        for k in g.neighbors(j):
            if k == i:
                continue
            total += len((ni & _minus(g.neighbors(k))) - {int(j)})
    return total


def open_quadriads_inner(g: Graph, i: int) -> int:
    """OQI(i): open quadriads with ``i`` as an inner node."""
    ni = g.neighbors(i)
    return sum(
        len(_minus(ni, j, k)) for j in ni for k in g.neighbors(j) if k != i
    )


def open_quadriads_outer(g: Graph, i: int) -> int:
    """OQO(i): open quadriads with ``i`` as an outer node."""
    return sum(
        len(_minus(g.neighbors(k), j, i))
        for j in g.neighbors(i)
        for k in g.neighbors(j)
        if k != i
    )


def i_quad(g: Graph, i: int) -> float:
    """``2 Q(i) / OQI(i)``; NaN when ``OQI(i) = 0``."""
    den = open_quadriads_inner(g, i)
    return quad_numerator(g, i) / den if den else float("nan")


def o_quad(g: Graph, i: int) -> float:
    """``2 Q(i) / OQO(i)``; NaN when ``OQO(i) = 0``."""
    den = open_quadriads_outer(g, i)
    return quad_numerator(g, i) / den if den else float("nan")


# -- whole-graph values -------------------------------------------------------


def i_quad_all(g: Graph, counts: QuadCounts | None = None) -> np.ndarray:
    c = counts or quad_counts(g)
    return _ratio(c.closed, c.oqi)


def o_quad_all(g: Graph, counts: QuadCounts | None = None) -> np.ndarray:
    c = counts or quad_counts(g)
    return _ratio(c.closed, c.oqo)


def average_i_quad(g: Graph, counts: QuadCounts | None = None) -> float:
    return _mean_zero_filled(i_quad_all(g, counts))


def average_o_quad(g: Graph, counts: QuadCounts | None = None) -> float:
    return _mean_zero_filled(o_quad_all(g, counts))


def global_i_quad(g: Graph, counts: QuadCounts | None = None) -> float:
    """Total numerator (8x the quadrangle count) over total OQI; NaN without open quadriads."""
    c = counts or quad_counts(g)
    den = int(c.oqi.sum())
    return int(c.closed.sum()) / den if den else float("nan")


def global_o_quad(g: Graph, counts: QuadCounts | None = None) -> float:
    """Total numerator over total OQO."""
    c = counts or quad_counts(g)
    den = int(c.oqo.sum())
    return int(c.closed.sum()) / den if den else float("nan")


def quadrangle_total(g: Graph, counts: QuadCounts | None = None) -> int:
    c = counts or quad_counts(g)
    return int(c.closed.sum()) // 8


# -- weighted variants --------------------------------------------------------


@numba.njit(cache=True)
def _weighted_sums_kernel(indptr, indices, weights, nodes, n):
    out = np.zeros((len(nodes), 3))
    w_i = np.zeros(n)
    for t in range(len(nodes)):
        i = nodes[t]
        for p in range(indptr[i], indptr[i + 1]):
            w_i[indices[p]] = weights[p]
        num = 0.0
        den_inner = 0.0
        den_outer = 0.0
        for p in range(indptr[i], indptr[i + 1]):
            j = indices[p]
            w_ij = weights[p]
            for q in range(indptr[j], indptr[j + 1]):
                k = indices[q]
                if k == i:
                    continue
                w_ijk = w_ij * weights[q]
                for r in range(indptr[i], indptr[i + 1]):
                    l = indices[r]
                    if l != j and l != k:
                        den_inner += w_ijk * weights[r]
                for r in range(indptr[k], indptr[k + 1]):
                    l = indices[r]
                    if l == j or l == i:
                        continue
                    w_kl = weights[r]
                    den_outer += w_ijk * w_kl
                    if w_i[l] > 0.0:
                        num += w_ijk * w_i[l] * w_kl
        for p in range(indptr[i], indptr[i + 1]):
            w_i[indices[p]] = 0.0
        out[t, 0] = num
        out[t, 1] = den_inner
        out[t, 2] = den_outer
    return out


@dataclass
class WeightedQuadSums:
    """Weighted numerator and the i-quad / o-quad denominators per node."""

    closed: np.ndarray
    inner: np.ndarray
    outer: np.ndarray


def _require_weights(g):
    if not g.is_weighted:
        raise ValueError(
            "weighted coefficients need edge weights; use g.unit_weighted() for unit weights"
        )


def weighted_quad_sums(g: Graph, nodes=None) -> WeightedQuadSums:
    """Weighted sums evaluated term by term in ascending ``j``, ``k``, ``l`` order.

    Each product is formed in the order ``w_ij w_jk w_il w_lk`` (numerator),
    ``w_ij w_jk w_il`` and ``w_ij w_jk w_kl`` (denominators), so results are
    reproducible bit for bit and unit weights give exact integer counts.
    """
    _require_weights(g)
    if nodes is None:
        nodes = np.arange(g.node_count, dtype=np.int64)
    nodes = np.atleast_1d(np.asarray(nodes, dtype=np.int64))
    out = _weighted_sums_kernel(g.indptr, g.indices, g.weights, nodes, g.node_count)
    return WeightedQuadSums(closed=out[:, 0], inner=out[:, 1], outer=out[:, 2])


def weighted_i_quad(g: Graph, i: int) -> float:
    g._check(i)
    s = weighted_quad_sums(g, [i])
    return float(s.closed[0] / s.inner[0]) if s.inner[0] > 0 else float("nan")


def weighted_o_quad(g: Graph, i: int) -> float:
    g._check(i)
    s = weighted_quad_sums(g, [i])
    return float(s.closed[0] / s.outer[0]) if s.outer[0] > 0 else float("nan")


def weighted_i_quad_all(g: Graph, sums: WeightedQuadSums | None = None) -> np.ndarray:
    s = sums or weighted_quad_sums(g)
    return _ratio(s.closed, s.inner)


def weighted_o_quad_all(g: Graph, sums: WeightedQuadSums | None = None) -> np.ndarray:
    s = sums or weighted_quad_sums(g)
    return _ratio(s.closed, s.outer)


def average_weighted_i_quad(g: Graph) -> float:
    return _mean_zero_filled(weighted_i_quad_all(g))


def average_weighted_o_quad(g: Graph) -> float:
    return _mean_zero_filled(weighted_o_quad_all(g))
