"""Network-level summaries: dataset statistics rows, CDFs, degree-binned means
and the five-feature vectors used for network classification."""

from __future__ import annotations

import csv
from dataclasses import astuple, dataclass

import numpy as np

from .graph import EmptyGraphError, Graph
from .report import CoefficientReport, format_float, full_report


def _quotient(a, b):
    return a / b if b else None


@dataclass(frozen=True)
class SummaryRow:
    """One row of network statistics; quotients are ``None`` when undefined."""

    nodes: int
    edges: int
    mean_degree: float
    C: float
    E: float
    I: float
    O: float
    C_over_E: float | None
    I_over_O: float | None
    I_over_C: float | None
    O_over_E: float | None


SUMMARY_COLUMNS = ["network", "nodes", "edges", "mean_degree", "C", "E", "I", "O",
                   "C/E", "I/O", "I/C", "O/E"]


def summary(g: Graph, report: CoefficientReport | None = None) -> SummaryRow:
    if g.node_count == 0:
        raise EmptyGraphError("summary of an empty graph")
    r = report or full_report(g, weighted=False)
    c, e, i, o = (r.average(k) for k in "CEIO")
    return SummaryRow(
        nodes=g.node_count,
        edges=g.edge_count,
        mean_degree=2 * g.edge_count / g.node_count,
        C=c,
        E=e,
        I=i,
        O=o,
        C_over_E=_quotient(c, e),
        I_over_O=_quotient(i, o),
        I_over_C=_quotient(i, c),
        O_over_E=_quotient(o, e),
    )


def summary_cells(name, row: SummaryRow) -> list[str]:
    vals = astuple(row)
    return [name, str(vals[0]), str(vals[1])] + [format_float(v) for v in vals[2:]]


def cdf(values):
    """Empirical CDF as ``(x, F)`` at the sorted unique values.

    NaN entries (undefined coefficients) count as 0.
    """
    v = np.nan_to_num(np.asarray(values, dtype=np.float64), nan=0.0)
    if v.size == 0:
        raise ValueError("cdf of an empty sequence")
    x, counts = np.unique(v, return_counts=True)
    f = np.cumsum(counts) / v.size
    f[-1] = 1.0
    return x, f


def cdf_at(x, f, t):
    """Evaluate the right-continuous step function at points ``t``."""
    idx = np.searchsorted(x, t, side="right") - 1
    return np.where(idx >= 0, f[np.clip(idx, 0, None)], 0.0)


@dataclass(frozen=True)
class DegreeBinRow:
    bin_low: int
    bin_high: int
    node_count: int
    mean_I: float
    mean_O: float


def degree_binned_means(g: Graph, report: CoefficientReport | None = None, base: int = 2):
    """Mean I and O per logarithmic degree bin ``[base^t, base^(t+1))``.

    Degree-0 nodes are left out; undefined coefficients count as 0.
    Empty bins are omitted.
    """
    if g.node_count == 0:
        raise EmptyGraphError("degree bins of an empty graph")
    r = report or full_report(g, weighted=False)
    d = np.asarray(g.degrees)
    i_vals, o_vals = r.filled("I"), r.filled("O")
    rows = []
    if d.max(initial=0) < 1:
        return rows
    low = 1
    while low <= d.max():
        high = low * base
        sel = (d >= low) & (d < high)
        if sel.any():
            rows.append(DegreeBinRow(low, high, int(sel.sum()),
                                     float(i_vals[sel].mean()), float(o_vals[sel].mean())))
        low = high
    return rows


@dataclass(frozen=True)
class NetworkFeatureVector:
    mean_degree: float
    avg_clustering: float
    avg_closure: float
    avg_i_quad: float
    avg_o_quad: float

    def as_array(self, with_quads=True) -> np.ndarray:
        v = astuple(self)
        return np.array(v if with_quads else v[:3], dtype=np.float64)


def feature_vector(g: Graph, report: CoefficientReport | None = None) -> NetworkFeatureVector:
    s = summary(g, report)
    return NetworkFeatureVector(s.mean_degree, s.C, s.E, s.I, s.O)


def write_cdf_csv(x, f, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["value", "cumulative_fraction"])
    for a, b in zip(x, f):
        w.writerow([format_float(a), format_float(b)])


def write_bins_csv(rows, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["bin_low", "bin_high", "count", "mean_I", "mean_O"])
    for r in rows:
        w.writerow([r.bin_low, r.bin_high, r.node_count, format_float(r.mean_I), format_float(r.mean_O)])
