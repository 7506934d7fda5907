"""Configuration-model and Erdos-Renyi null models for the quadrangle coefficients.

Under stub matching on degrees ``d_1..d_n`` with ``m`` edges and
size-biased mean degree ``kbar = sum d^2 / sum d``, the large-n expectations
are

    E[I(i)] = (kbar - 1)^2 / 2m
    E[O(i)] = (d_i - 1)(kbar - 1) / 2m

so the o-quad coefficient grows with degree while the i-quad coefficient
does not.  In G(n, p) the expected average i-quad coefficient is ``p``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph
from .report import format_float
from .quads import i_quad_all, o_quad_all, quad_counts


class DegreeBoundError(ValueError):
    """Degree sequence violates ``max d_i^2 <= 2m``."""


@dataclass(frozen=True)
class DegreeSequence:
    degrees: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.degrees, dtype=np.int64)
        if d.ndim != 1:
            raise ValueError("degree sequence must be one-dimensional")
        if np.any(d < 0):
            raise ValueError("degrees must be non-negative")
        if int(d.sum()) % 2:
            raise ValueError("sum of degrees must be even")
        d.setflags(write=False)
        object.__setattr__(self, "degrees", d)

    @classmethod
    def regular(cls, n, d):
        return cls(np.full(n, d, dtype=np.int64))

    @classmethod
    def from_classes(cls, classes):
        """Build from ``[(degree, count), ...]``."""
        return cls(np.concatenate([np.full(c, d, dtype=np.int64) for d, c in classes]))

    def __len__(self):
        return len(self.degrees)

    @property
    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    @property
    def size_biased_mean(self) -> float:
        d = self.degrees
        return int((d * d).sum()) / int(d.sum())

    @property
    def within_bound(self) -> bool:
        """Whether ``max d_i^2 <= 2m`` so that ``d_i d_j / 2m`` is a probability."""
        return int(self.degrees.max(initial=0)) ** 2 <= 2 * self.edge_count


def _as_sequence(seq):
    return seq if isinstance(seq, DegreeSequence) else DegreeSequence(np.asarray(seq))


def expected_i_quad(seq) -> float:
    """``(kbar - 1)^2 / 2m`` (the same for every node)."""
    s = _as_sequence(seq)
    m = s.edge_count
    if m == 0:
        raise ValueError("expectation needs at least one edge")
    return (s.size_biased_mean - 1) ** 2 / (2 * m)


def expected_o_quad(seq, i) -> float:
    """``(d_i - 1)(kbar - 1) / 2m`` for node ``i``."""
    s = _as_sequence(seq)
    return expected_o_quad_for_degree(s, int(s.degrees[i]))


def expected_o_quad_for_degree(seq, degree) -> float:
    s = _as_sequence(seq)
    m = s.edge_count
    if m == 0:
        raise ValueError("expectation needs at least one edge")
    return (degree - 1) * (s.size_biased_mean - 1) / (2 * m)


# -- samplers -------------------------------------------------------------------


@dataclass(frozen=True)
class StubMatchingDiscards:
    self_loops: int
    multi_edges: int

    @property
    def total(self):
        return self.self_loops + self.multi_edges


def sample_configuration_model(seq, seed, return_discards=False):
    """Uniform stub matching, then erase self-loops and repeated edges.

    ``seed`` may be an int or a tuple such as ``(seed, sample_index)``.
    With ``return_discards`` the number of erased stub pairs is returned too.
    """
    s = _as_sequence(seq)
    n = len(s)
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n, dtype=np.int64), s.degrees)
    rng.shuffle(stubs)
    pairs = stubs.reshape(-1, 2)
    loops = int((pairs[:, 0] == pairs[:, 1]).sum())
    g = Graph.from_edges(n, pairs)
    if return_discards:
        multi = len(pairs) - loops - g.edge_count
        return g, StubMatchingDiscards(loops, multi)
    return g


def sample_er(n, p, seed) -> Graph:
    """G(n, p) by independent coin flips over all node pairs."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    return Graph.from_edges(n, np.column_stack([iu[keep], ju[keep]]))


def er_expected_avg_i_quad(p) -> float:
    return float(p)


# -- Monte-Carlo validation -------------------------------------------------------


@dataclass
class DegreeClassRow:
    degree: int
    count: int
    samples: int
    emp_I_mean: float
    emp_I_se: float
    theory_I: float
    emp_O_mean: float
    emp_O_se: float
    theory_O: float

    def within(self, which, z=3.0) -> bool:
        """Empirical mean within ``z`` standard errors of theory (NaN means skip)."""
        mean, se, theory = {
            "I": (self.emp_I_mean, self.emp_I_se, self.theory_I),
            "O": (self.emp_O_mean, self.emp_O_se, self.theory_O),
        }[which]
        if np.isnan(mean):
            return True
        return abs(mean - theory) <= z * se


@dataclass
class ValidationReport:
    """Per-degree-class comparison plus per-sample averages of the erase step.

    ``discarded_fraction`` is the mean share of stub pairs erased as loops or
    repeats; ``degree_deviation`` is the mean of ``sum |d_actual - d| / sum d``.
    """

    seed: object
    samples: int
    rows: list[DegreeClassRow]
    discarded_fraction: float
    degree_deviation: float
    extra: dict = field(default_factory=dict)

    def fraction_within(self, which, z=3.0) -> float:
        rows = [r for r in self.rows if not np.isnan(getattr(r, f"emp_{which}_mean"))]
        if not rows:
            return float("nan")
        return sum(r.within(which, z) for r in rows) / len(rows)

    def passes(self, threshold=0.95, z=3.0, which=("O",)) -> bool:
        return all(self.fraction_within(w, z) >= threshold for w in which)


VALIDATION_COLUMNS = [
    "degree_class", "count", "emp_I_mean", "emp_I_se", "theory_I",
    "emp_O_mean", "emp_O_se", "theory_O",
]


def write_validation_csv(report: ValidationReport, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(VALIDATION_COLUMNS + ["samples", "seed"])
    for r in report.rows:
        w.writerow([
            r.degree, r.count,
            format_float(r.emp_I_mean), format_float(r.emp_I_se), format_float(r.theory_I),
            format_float(r.emp_O_mean), format_float(r.emp_O_se), format_float(r.theory_O),
            report.samples, report.seed,
        ])


def _class_means(values, degrees, classes):
    """Mean of defined values per degree class; NaN where none are defined."""
    out = np.full(len(classes), np.nan)
    for c, d in enumerate(classes):
        v = values[degrees == d]
        v = v[~np.isnan(v)]
        if len(v):
            out[c] = v.mean()
    return out


def _mean_se(per_sample):
    """Mean over samples and standard error of that mean, ignoring NaN samples."""
    out_mean = np.full(per_sample.shape[1], np.nan)
    out_se = np.full(per_sample.shape[1], np.nan)
    for c in range(per_sample.shape[1]):
        v = per_sample[:, c]
        v = v[~np.isnan(v)]
        if len(v) >= 2:
            out_mean[c] = v.mean()
            out_se[c] = v.std(ddof=1) / np.sqrt(len(v))
        elif len(v) == 1:
            out_mean[c] = v[0]
    return out_mean, out_se


def validate_proposition(seq, samples, seed) -> ValidationReport:
    """Compare configuration-model samples with the closed-form expectations.

    For each degree class the local i-quad and o-quad coefficients are
    averaged within every sample (undefined values excluded), and the mean
    and standard error are taken across samples, each drawn from its own
    stream ``(seed, sample_index)``.  Theory uses the requested degree
    sequence, before erasing loops and repeated edges.
    """
    if samples < 10:
        raise ValueError("validation needs at least 10 samples")
    s = _as_sequence(seq)
    if s.edge_count == 0:
        raise ValueError("validation needs at least one edge")
    if not s.within_bound:
        raise DegreeBoundError(
            "max degree^2 exceeds 2m; stub-matching edge probabilities would exceed 1"
        )
    classes = np.unique(s.degrees[s.degrees > 0])
    per_i = np.empty((samples, len(classes)))
    per_o = np.empty((samples, len(classes)))
    discarded = 0
    deviation = 0
    for k in range(samples):
        g, disc = sample_configuration_model(s, (seed, k), return_discards=True)
        discarded += disc.total
        deviation += int(np.abs(g.degrees - s.degrees).sum())
        counts = quad_counts(g)
        per_i[k] = _class_means(i_quad_all(g, counts), s.degrees, classes)
        per_o[k] = _class_means(o_quad_all(g, counts), s.degrees, classes)
    mi, sei = _mean_se(per_i)
    mo, seo = _mean_se(per_o)
    ti = expected_i_quad(s)
    rows = [
        DegreeClassRow(
            degree=int(d),
            count=int((s.degrees == d).sum()),
            samples=samples,
            emp_I_mean=float(mi[c]),
            emp_I_se=float(sei[c]),
            theory_I=ti,
            emp_O_mean=float(mo[c]),
            emp_O_se=float(seo[c]),
            theory_O=expected_o_quad_for_degree(s, int(d)),
        )
        for c, d in enumerate(classes)
    ]
    total_stubs = int(s.degrees.sum())
    return ValidationReport(
        seed=seed,
        samples=samples,
        rows=rows,
        discarded_fraction=discarded / (samples * (total_stubs // 2)),
        degree_deviation=deviation / (samples * total_stubs),
    )


@dataclass
class ERValidation:
    p: float
    samples: int
    mean: float
    se: float
    values: np.ndarray

    def within(self, z=3.0):
        return abs(self.mean - self.p) <= z * self.se


def validate_er(n, p, samples, seed) -> ERValidation:
    """Average i-quad coefficient over ``samples`` G(n, p) draws."""
    from .quads import average_i_quad

    vals = np.array([average_i_quad(sample_er(n, p, (seed, k))) for k in range(samples)])
    se = vals.std(ddof=1) / np.sqrt(samples) if samples > 1 else float("nan")
    return ERValidation(p=p, samples=samples, mean=float(vals.mean()), se=float(se), values=vals)
