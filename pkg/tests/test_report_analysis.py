import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, cycle, small_graphs
from quadcoef import EmptyGraphError, Graph, full_report
from quadcoef.analysis import (
    cdf,
    cdf_at,
    degree_binned_means,
    feature_vector,
    summary,
    summary_cells,
)
from quadcoef.nullmodels import DegreeSequence, sample_configuration_model
from quadcoef.report import read_report_csv, write_report_csv


class TestReport:
    def test_diamond_row(self, diamond):
        r = full_report(diamond)
        row = r.row(diamond.index_of("a"))
        assert (row.T, row.Q, row.OTC, row.OTE, row.OQI, row.OQO) == (1, 1, 1, 4, 2, 4)
        assert (row.C, row.E, row.I, row.O) == (1.0, 0.5, 1.0, 0.5)
        assert len(r) == 4

    def test_csv(self, diamond):
        buf = io.StringIO()
        write_report_csv(full_report(diamond), buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "node_label,degree,T,Q,OTC,OTE,OQI,OQO,C,E,I,O"
        assert lines[1] == "a,2,1,1,1,4,2,4,1.0,0.5,1.0,0.5"
        assert len(lines) == 5

    def test_csv_undefined_is_empty(self):
        buf = io.StringIO()
        write_report_csv(full_report(Graph.from_edges(3, [(0, 1)])), buf)
        assert buf.getvalue().splitlines()[3] == "2,0,0,0,0,0,0,0,,,,"

    def test_weighted_columns(self, diamond):
        buf = io.StringIO()
        write_report_csv(full_report(diamond.unit_weighted()), buf)
        lines = buf.getvalue().splitlines()
        assert lines[0].endswith(",Iw,Ow")
        assert lines[1].endswith(",1.0,0.5")

    @given(small_graphs())
    @settings(max_examples=50, deadline=None)
    def test_csv_round_trip(self, g):
        r = full_report(g)
        buf = io.StringIO()
        write_report_csv(r, buf)
        buf.seek(0)
        rows = read_report_csv(buf)
        for name in "CEIO":
            got = np.array([row[name] for row in rows])
            assert np.array_equal(got, getattr(r, name), equal_nan=True)


class TestSummary:
    def test_k4(self, k4):
        s = summary(k4)
        assert (s.C, s.E, s.I, s.O) == (1.0, 1.0, 1.0, 1.0)
        assert (s.C_over_E, s.I_over_O, s.I_over_C, s.O_over_E) == (1.0, 1.0, 1.0, 1.0)
        assert s.mean_degree == 3.0

    def test_zero_quotients_are_empty(self):
        cells = summary_cells("p", summary(Graph.from_edges(3, [(0, 1), (1, 2)])))
        assert cells[:3] == ["p", "3", "2"]
        assert cells[-4:] == ["", "", "", ""]

    def test_empty_graph(self):
        with pytest.raises(EmptyGraphError):
            summary(Graph.empty(0))

    @given(small_graphs())
    @settings(max_examples=50, deadline=None)
    def test_quotients_consistent(self, g):
        if g.node_count == 0:
            return
        s = summary(g)
        for q, a, b in ((s.C_over_E, s.C, s.E), (s.I_over_O, s.I, s.O),
                        (s.I_over_C, s.I, s.C), (s.O_over_E, s.O, s.E)):
            if b == 0:
                assert q is None
            else:
                assert q == pytest.approx(a / b, abs=1e-9)

    def test_feature_vector(self, k4):
        assert tuple(feature_vector(k4).as_array()) == (3.0, 1.0, 1.0, 1.0, 1.0)
        assert len(feature_vector(k4).as_array(with_quads=False)) == 3


class TestCdf:
    def test_basic(self):
        x, f = cdf([0, 0, 1, 1])
        assert list(x) == [0.0, 1.0]
        assert list(f) == [0.5, 1.0]

    def test_constant(self):
        x, f = cdf([0.3] * 7)
        assert list(f) == [1.0]

    def test_nan_is_zero(self):
        x, f = cdf([np.nan, 1.0])
        assert list(x) == [0.0, 1.0]

    def test_empty(self):
        with pytest.raises(ValueError):
            cdf([])

    @given(st.lists(st.floats(0, 1), min_size=1, max_size=200))
    @settings(max_examples=200, deadline=None)
    def test_properties(self, values):
        x, f = cdf(values)
        assert np.all(np.diff(f) > 0)
        assert np.all((f > 0) & (f <= 1))
        assert f[-1] == 1.0
        assert np.all(np.diff(x) > 0)
        assert cdf_at(x, f, [x[0] - 1])[0] == 0.0

    def test_o_curve_above_i_curve_at_small_values(self):
        seq = DegreeSequence.from_classes([(5, 400), (10, 300), (20, 200), (40, 100)])
        g = sample_configuration_model(seq, 3)
        r = full_report(g)
        assert r.average("O") < r.average("I")
        xi, fi = cdf(r.I)
        xo, fo = cdf(r.O)
        q = np.quantile(np.concatenate([r.filled("I"), r.filled("O")]), 0.25)
        t = np.union1d(xi[xi <= q], xo[xo <= q])
        assert np.all(cdf_at(xo, fo, t) >= cdf_at(xi, fi, t))


class TestBins:
    def test_regular_single_bin(self):
        rows = degree_binned_means(cycle(8))
        assert [(r.bin_low, r.bin_high, r.node_count) for r in rows] == [(2, 4, 8)]

    def test_matching_graph(self):
        rows = degree_binned_means(Graph.from_edges(4, [(0, 1), (2, 3)]))
        assert len(rows) == 1
        assert (rows[0].bin_low, rows[0].bin_high, rows[0].mean_I, rows[0].mean_O) == (1, 2, 0.0, 0.0)

    @given(small_graphs())
    @settings(max_examples=50, deadline=None)
    def test_counts_partition_nonisolated(self, g):
        if g.node_count == 0:
            return
        rows = degree_binned_means(g)
        assert sum(r.node_count for r in rows) == int((g.degrees > 0).sum())
        for r in rows:
            assert r.bin_low < r.bin_high
            assert r.bin_high == 2 * r.bin_low

    def test_heavy_tail_trend(self):
        seq = DegreeSequence.from_classes([(5, 400), (10, 300), (20, 200), (40, 100)])
        g = sample_configuration_model(seq, 5)
        rows = [r for r in degree_binned_means(g) if r.node_count >= 50]
        o = np.array([r.mean_O for r in rows])
        i = np.array([r.mean_I for r in rows])
        assert len(rows) == 4
        assert np.all(np.diff(o) > 0)
        spread = lambda v: math.log(v.max() / v.min())  # noqa: E731
        assert spread(i) < 0.5 * spread(o)

    def test_k5(self):
        rows = degree_binned_means(complete(5))
        assert [(r.bin_low, r.mean_I, r.mean_O) for r in rows] == [(4, 1.0, 1.0)]
