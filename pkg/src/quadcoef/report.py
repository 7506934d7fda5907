"""Per-node coefficient reports combining triangle and quadrangle statistics."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .quads import QuadCounts, quad_counts, weighted_quad_sums
from .triangles import TriadCounts, _ratio, triad_counts


@dataclass(frozen=True)
class NodeCoefficients:
    """One node's counts and coefficients; undefined coefficients are NaN."""

    node: int
    label: str
    degree: int
    T: int
    Q: int
    OTC: int
    OTE: int
    OQI: int
    OQO: int
    C: float
    E: float
    I: float
    O: float
    Iw: float | None = None
    Ow: float | None = None


@dataclass
class CoefficientReport:
    """Column arrays for every node of a graph, in node-id order."""

    labels: tuple
    degree: np.ndarray
    T: np.ndarray
    Q: np.ndarray
    OTC: np.ndarray
    OTE: np.ndarray
    OQI: np.ndarray
    OQO: np.ndarray
    C: np.ndarray
    E: np.ndarray
    I: np.ndarray
    O: np.ndarray
    Iw: np.ndarray | None = None
    Ow: np.ndarray | None = None
    triads: TriadCounts | None = None
    quads: QuadCounts | None = None

    def __len__(self):
        return len(self.degree)

    @property
    def weighted(self) -> bool:
        return self.Iw is not None

    def row(self, i) -> NodeCoefficients:
        extra = {}
        if self.weighted:
            extra = {"Iw": float(self.Iw[i]), "Ow": float(self.Ow[i])}
        return NodeCoefficients(
            node=int(i),
            label=self.labels[i],
            degree=int(self.degree[i]),
            T=int(self.T[i]),
            Q=int(self.Q[i]),
            OTC=int(self.OTC[i]),
            OTE=int(self.OTE[i]),
            OQI=int(self.OQI[i]),
            OQO=int(self.OQO[i]),
            C=float(self.C[i]),
            E=float(self.E[i]),
            I=float(self.I[i]),
            O=float(self.O[i]),
            **extra,
        )

    def rows(self):
        return [self.row(i) for i in range(len(self))]

    def filled(self, name) -> np.ndarray:
        """Coefficient column with undefined values replaced by 0."""
        return np.nan_to_num(getattr(self, name), nan=0.0)

    def average(self, name) -> float:
        return float(self.filled(name).mean()) if len(self) else float("nan")


def full_report(g: Graph, weighted: bool | None = None) -> CoefficientReport:
    """All counts and coefficients for every node of ``g``.

    Weighted coefficients are included when ``weighted`` is true, or by
    default whenever the graph carries weights.
    """
    if weighted is None:
        weighted = g.is_weighted
    t = triad_counts(g)
    q = quad_counts(g, t)
    iw = ow = None
    if weighted:
        s = weighted_quad_sums(g if g.is_weighted else g.unit_weighted())
        iw = _ratio(s.closed, s.inner)
        ow = _ratio(s.closed, s.outer)
    return CoefficientReport(
        labels=g.labels,
        degree=np.asarray(g.degrees, dtype=np.int64),
        T=t.triangles,
        Q=q.quadrangles,
        OTC=t.otc,
        OTE=t.ote,
        OQI=q.oqi,
        OQO=q.oqo,
        C=_ratio(t.triangles, t.otc),
        E=_ratio(t.closed, t.ote),
        I=_ratio(q.closed, q.oqi),
        O=_ratio(q.closed, q.oqo),
        Iw=iw,
        Ow=ow,
        triads=t,
        quads=q,
    )


def format_float(x) -> str:
    """Shortest round-trip repr; empty string for undefined values."""
    if x is None:
        return ""
    x = float(x)
    if np.isnan(x):
        return ""
    return repr(x)


REPORT_COLUMNS = ["node_label", "degree", "T", "Q", "OTC", "OTE", "OQI", "OQO", "C", "E", "I", "O"]


def write_report_csv(report: CoefficientReport, fh):
    cols = REPORT_COLUMNS + (["Iw", "Ow"] if report.weighted else [])
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(cols)
    for r in report.rows():
        line = [r.label, r.degree, r.T, r.Q, r.OTC, r.OTE, r.OQI, r.OQO]
        line += [format_float(v) for v in (r.C, r.E, r.I, r.O)]
        if report.weighted:
            line += [format_float(r.Iw), format_float(r.Ow)]
        w.writerow(line)


TRIANGLE_COLUMNS = ["node_label", "degree", "T", "OTC", "OTE", "C", "E"]


def write_triangle_csv(report: CoefficientReport, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(TRIANGLE_COLUMNS)
    for r in report.rows():
        w.writerow([r.label, r.degree, r.T, r.OTC, r.OTE, format_float(r.C), format_float(r.E)])


def read_report_csv(fh) -> list[dict]:
    """Parse a report CSV back into dicts (undefined coefficients as NaN)."""
    ints = {"degree", "T", "Q", "OTC", "OTE", "OQI", "OQO"}
    out = []
    for rec in csv.DictReader(fh):
        row = {}
        for k, v in rec.items():
            if k == "node_label":
                row[k] = v
            elif k in ints:
                row[k] = int(v)
            else:
                row[k] = float(v) if v != "" else float("nan")
        out.append(row)
    return out


__all__ = [
    "CoefficientReport",
    "NodeCoefficients",
    "full_report",
    "write_report_csv",
    "write_triangle_csv",
    "TRIANGLE_COLUMNS",
    "read_report_csv",
    "format_float",
    "REPORT_COLUMNS",
]
