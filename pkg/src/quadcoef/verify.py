"""Cross-check the fast coefficient path against brute-force enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph
from .oracle import (
    PATH_CAP,
    OracleSizeError,
    count_quadrangles_bruteforce,
    count_triangles_bruteforce,
    path_counts_bruteforce,
    weighted_path_sums_bruteforce,
)
from .quads import global_i_quad, global_o_quad, weighted_quad_sums
from .report import full_report
from .triangles import _ratio, global_closure, global_clustering

WALK_CAP = 20_000_000


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Verification:
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.ok]

    def add(self, name, ok, detail=""):
        self.checks.append(Check(name, bool(ok), detail))


def length3_walk_bound(g: Graph) -> int:
    """Upper bound on directed length-3 paths: ``sum over arcs (j,k) of d_j d_k``."""
    d = np.asarray(g.degrees, dtype=np.int64)
    e = g.edges()
    return int(2 * (d[e[:, 0]] * d[e[:, 1]]).sum()) if len(e) else 0


def _same_ratios(a, b, tol):
    na, nb = np.isnan(a), np.isnan(b)
    if not np.array_equal(na, nb):
        return False, "undefined entries differ"
    if not na.all():
        err = float(np.max(np.abs(a[~na] - b[~nb])))
        return err <= tol, f"max abs diff {err:.3g}"
    return True, ""


def _exact(ver, name, fast, slow):
    fast, slow = np.asarray(fast), np.asarray(slow)
    bad = np.flatnonzero(fast != slow)
    detail = "" if not len(bad) else f"first mismatch at node {bad[0]}: {fast[bad[0]]} vs {slow[bad[0]]}"
    ver.add(name, len(bad) == 0, detail)


def verify_graph(g: Graph, tol: float = 1e-12, weighted_tol: float = 1e-9,
                 cap: int = PATH_CAP, walk_cap: int = WALK_CAP) -> Verification:
    """Compare every per-node count and coefficient with enumeration.

    Raises :class:`OracleSizeError` when the graph is too large to enumerate.
    """
    if g.node_count > cap:
        raise OracleSizeError(f"verification is capped at {cap} nodes (graph has {g.node_count})")
    if length3_walk_bound(g) > walk_cap:
        raise OracleSizeError(f"verification is capped at {walk_cap} length-3 paths")
    ver = Verification()
    r = full_report(g)
    p = path_counts_bruteforce(g, cap)
    tri = count_triangles_bruteforce(g, cap)
    quad = count_quadrangles_bruteforce(g, cap)
    _exact(ver, "T", r.T, tri.triangles)
    _exact(ver, "Q", r.Q, quad.quadrangles)
    _exact(ver, "OTC", r.OTC, p.otc)
    _exact(ver, "OTE", r.OTE, p.ote)
    _exact(ver, "OQI", r.OQI, p.oqi)
    _exact(ver, "OQO", r.OQO, p.oqo)
    _exact(ver, "closed triads", r.triads.closed, p.closed_triads)
    _exact(ver, "closed quadriads", r.quads.closed, p.closed_quadriads)
    for name, ours, ref in (
        ("C", r.C, _ratio(tri.triangles, p.otc)),
        ("E", r.E, _ratio(p.closed_triads, p.ote)),
        ("I", r.I, _ratio(p.closed_quadriads, p.oqi)),
        ("O", r.O, _ratio(p.closed_quadriads, p.oqo)),
    ):
        ok, detail = _same_ratios(ours, ref, tol)
        ver.add(name, ok, detail)
    ver.add("numerator = 8 Q_total", int(r.quads.closed.sum()) == 8 * quad.quadrangle_total,
            f"{int(r.quads.closed.sum())} vs 8 * {quad.quadrangle_total}")
    for name, a, b in (
        ("global clustering = global closure", global_clustering(g, r.triads), global_closure(g, r.triads)),
        ("global i-quad = global o-quad", global_i_quad(g, r.quads), global_o_quad(g, r.quads)),
    ):
        same = (np.isnan(a) and np.isnan(b)) or abs(a - b) <= tol
        ver.add(name, same, f"{a!r} vs {b!r}")
    if g.is_weighted:
        fast = weighted_quad_sums(g)
        slow = weighted_path_sums_bruteforce(g, cap)
        for name in ("closed", "inner", "outer"):
            a, b = getattr(fast, name), getattr(slow, name)
            ok = np.allclose(a, b, rtol=weighted_tol, atol=weighted_tol)
            ver.add(f"weighted {name}", ok, f"max abs diff {float(np.max(np.abs(a - b), initial=0)):.3g}")
    return ver
