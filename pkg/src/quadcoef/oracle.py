"""Brute-force motif and path enumeration for small graphs.

Everything here is counted by explicitly listing node sequences (simple
paths grown one edge at a time) or node subsets, never by the closed-form
neighbourhood sums used in :mod:`quadcoef.triangles` and
:mod:`quadcoef.quads`.  That keeps it usable as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .graph import Graph

TRIANGLE_CAP = 2000
QUADRANGLE_CAP = 1000
PATH_CAP = 1000
SUBSET_CAP = 40


class OracleSizeError(ValueError):
    """Graph too large for exhaustive enumeration; use the fast path instead."""


def _guard(g, cap, what):
    if g.node_count > cap:
        raise OracleSizeError(
            f"{what} enumeration is capped at {cap} nodes (graph has {g.node_count}); "
            "use quadcoef.full_report for large graphs"
        )


def directed_paths(g: Graph, length: int) -> np.ndarray:
    """All directed simple paths with ``length`` edges, one row per sequence.

    Every undirected path appears twice (once per direction).
    """
    rows = np.repeat(np.arange(g.node_count), g.degrees)
    paths = np.column_stack([rows, g.indices])
    for _ in range(length - 1):
        last = paths[:, -1]
        deg = g.degrees[last]
        owner = np.repeat(np.arange(len(paths)), deg)
        offset = np.arange(len(owner)) - np.repeat(np.cumsum(deg) - deg, deg)
        nxt = g.indices[g.indptr[last][owner] + offset]
        grown = np.column_stack([paths[owner], nxt])
        simple = np.ones(len(grown), dtype=bool)
        for c in range(grown.shape[1] - 1):
            simple &= grown[:, c] != nxt
        paths = grown[simple]
    return paths


def _adjacent(g, a, b):
    if len(a) == 0:
        return np.zeros(0, dtype=bool)
    return np.asarray(g.adjacency[a, b]).ravel() != 0


def _weights(g, a, b):
    """Edge weights for pairs (a, b); 0 where absent, 1 on unweighted graphs."""
    if len(a) == 0:
        return np.zeros(0)
    return np.asarray(g.adjacency[a, b], dtype=np.float64).ravel()


@dataclass
class MotifCounts:
    """Per-node and total motif counts; fields not computed are ``None``."""

    triangles: np.ndarray | None = None
    quadrangles: np.ndarray | None = None
    triangle_total: int | None = None
    quadrangle_total: int | None = None


def count_triangles_bruteforce(g: Graph, cap: int = TRIANGLE_CAP) -> MotifCounts:
    """Triangles as closed length-2 paths.

    A triangle through ``i`` shows up as two directed paths starting at
    ``i``, and the whole triangle as six directed paths.
    """
    _guard(g, cap, "triangle")
    p = directed_paths(g, 2)
    closed = p[_adjacent(g, p[:, 2], p[:, 0])]
    per_node = np.bincount(closed[:, 0], minlength=g.node_count) // 2
    return MotifCounts(triangles=per_node, triangle_total=len(closed) // 6)


def count_quadrangles_bruteforce(g: Graph, cap: int = QUADRANGLE_CAP) -> MotifCounts:
    """Simple 4-cycles (chords allowed) as closed length-3 paths.

    A 4-cycle is one edge set; it appears as 8 directed sequences (four
    starting points, two directions), two of which start at each member.
    """
    _guard(g, cap, "quadrangle")
    p = directed_paths(g, 3)
    closed = p[_adjacent(g, p[:, 3], p[:, 0])]
    per_node = np.bincount(closed[:, 0], minlength=g.node_count) // 2
    return MotifCounts(quadrangles=per_node, quadrangle_total=len(closed) // 8)


@lru_cache(maxsize=64)
def _subsets(n, r):
    if n < r:
        return np.zeros((0, r), dtype=np.int64)
    return np.array(list(combinations(range(n), r)), dtype=np.int64)


def count_quadrangles_by_subsets(g: Graph, cap: int = SUBSET_CAP) -> MotifCounts:
    """4-cycles by testing the three possible cycles on every 4-node subset.

    Nodes ``a < b < c < d`` carry exactly three distinct 4-cycles:
    a-b-c-d, a-b-d-c and a-c-b-d.
    """
    _guard(g, cap, "subset")
    dense = g.adjacency.toarray() != 0
    s = _subsets(g.node_count, 4)
    per_node = np.zeros(g.node_count, dtype=np.int64)
    total = 0
    for order in ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)):
        w, x, y, z = (s[:, k] for k in order)
        hit = dense[w, x] & dense[x, y] & dense[y, z] & dense[z, w]
        total += int(hit.sum())
        per_node += np.bincount(s[hit].ravel(), minlength=g.node_count)
    return MotifCounts(quadrangles=per_node, quadrangle_total=total)


def count_triangles_by_subsets(g: Graph, cap: int = SUBSET_CAP) -> MotifCounts:
    _guard(g, cap, "subset")
    dense = g.adjacency.toarray() != 0
    s = _subsets(g.node_count, 3)
    hit = dense[s[:, 0], s[:, 1]] & dense[s[:, 1], s[:, 2]] & dense[s[:, 2], s[:, 0]]
    per_node = np.bincount(s[hit].ravel(), minlength=g.node_count)
    return MotifCounts(triangles=per_node, triangle_total=int(hit.sum()))


@dataclass
class PathCounts:
    """Per-node counts of open triads and open quadriads by role.

    ``otc``/``ote``: length-2 paths with the node at the centre / an end.
    ``oqi``/``oqo``: length-3 paths with the node inner / outer.
    ``closed_quadriads``: i-inner length-3 paths whose ends are adjacent,
    equal to twice the number of 4-cycles through the node.
    """

    otc: np.ndarray
    ote: np.ndarray
    oqi: np.ndarray
    oqo: np.ndarray
    closed_triads: np.ndarray
    closed_quadriads: np.ndarray


def path_counts_bruteforce(g: Graph, cap: int = PATH_CAP) -> PathCounts:
    """Classify every directionless length-2 and length-3 path by node role."""
    _guard(g, cap, "path")
    n = g.node_count
    p2 = directed_paths(g, 2)
    p3 = directed_paths(g, 3)
    # a directed sequence starting at i is the unique orientation of an
    # undirected path with i at that end; centres are hit once per direction
    otc = np.bincount(p2[:, 1], minlength=n) // 2
    ote = np.bincount(p2[:, 0], minlength=n)
    closed2 = _adjacent(g, p2[:, 2], p2[:, 0])
    oqi = np.bincount(p3[:, 1], minlength=n)
    oqo = np.bincount(p3[:, 0], minlength=n)
    closed3 = _adjacent(g, p3[:, 3], p3[:, 0])
    return PathCounts(
        otc=otc,
        ote=ote,
        oqi=oqi,
        oqo=oqo,
        closed_triads=np.bincount(p2[closed2, 0], minlength=n),
        closed_quadriads=np.bincount(p3[closed3, 1], minlength=n),
    )


@dataclass(frozen=True)
class OpenPathCounts:
    otc: int
    ote: int
    oqi: int
    oqo: int


def count_open_paths_bruteforce(g: Graph, i: int, cap: int = PATH_CAP) -> OpenPathCounts:
    """OTC, OTE, OQI and OQO of a single node by path enumeration."""
    g._check(i)
    c = path_counts_bruteforce(g, cap)
    return OpenPathCounts(int(c.otc[i]), int(c.ote[i]), int(c.oqi[i]), int(c.oqo[i]))


@dataclass
class WeightedPathSums:
    """Per-node weighted quadriad sums.

    ``inner``/``outer``: sum over length-3 paths with the node inner/outer
    of the product of the three path weights.  ``closed``: sum over closed
    i-inner paths of the product of the four cycle weights (the same total
    arises from closed i-outer paths).
    """

    closed: np.ndarray
    inner: np.ndarray
    outer: np.ndarray


def weighted_path_sums_bruteforce(g: Graph, cap: int = PATH_CAP) -> WeightedPathSums:
    _guard(g, cap, "path")
    n = g.node_count
    p = directed_paths(g, 3)
    a, b, c, d = p.T
    prod = _weights(g, a, b) * _weights(g, b, c) * _weights(g, c, d)
    closing = _weights(g, d, a)
    # each undirected i-inner path has exactly one orientation with i at position 1
    return WeightedPathSums(
        closed=np.bincount(b, weights=prod * closing, minlength=n),
        inner=np.bincount(b, weights=prod, minlength=n),
        outer=np.bincount(a, weights=prod, minlength=n),
    )
