import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_graphs
from quadcoef import Graph, TemporalEdgeList, full_report
from quadcoef.ml import (
    FEATURE_SETS,
    SplitError,
    SplitSpec,
    generate_candidates,
    pair_features,
    roc_auc,
    run_link_prediction,
    score,
    split_graph,
    train_smoke_classifier,
    write_pair_features_csv,
)
from quadcoef.nullmodels import DegreeSequence, sample_configuration_model, sample_er


def records(pairs, times=None):
    p = np.asarray(pairs, dtype=np.int64)
    n = int(p.max()) + 1
    t = np.arange(len(p)) if times is None else np.asarray(times)
    return TemporalEdgeList(p[:, 0], p[:, 1], t, tuple(str(i) for i in range(n)))


def edge_set(g, nodes=None):
    out = set()
    for u, v in g.edges():
        a, b = (u, v) if nodes is None else (nodes[u], nodes[v])
        out.add((min(a, b), max(a, b)))
    return out


class TestSplit:
    def test_ten_temporal_edges(self):
        # times are reversed relative to file order
        pairs = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (0, 2), (1, 3), (7, 9)]
        rec = records(pairs[::-1], times=np.arange(10)[::-1])
        s = split_graph(rec, SplitSpec("temporal"))
        assert s.cut == 7
        assert edge_set(s.old, s.nodes) == set(pairs[:7])
        # (7, 9) leaves V*
        assert edge_set(s.new, s.nodes) == {(0, 2), (1, 3)}
        assert list(s.nodes) == list(range(8))

    def test_floor_rule(self):
        spec = SplitSpec("temporal", 0.7)
        assert [spec.cut(n) for n in (10, 11, 20, 30, 3)] == [7, 7, 14, 21, 2]

    def test_repeat_goes_to_old_only(self):
        pairs = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 0), (0, 1), (0, 2), (1, 3)]
        s = split_graph(records(pairs), SplitSpec("temporal"))
        assert s.old.edge_count == 6
        assert s.old.has_edge(0, 1)
        assert edge_set(s.new, s.nodes) == {(0, 2), (1, 3)}

    def test_shuffled_same_seed(self):
        g = sample_er(40, 0.2, 1)
        a = split_graph(g, SplitSpec("shuffled", seed=3))
        b = split_graph(g, SplitSpec("shuffled", seed=3))
        c = split_graph(g, SplitSpec("shuffled", seed=3, repeat_index=1))
        assert a.old == b.old and a.new == b.new
        assert a.old != c.old

    def test_too_few_edges(self):
        with pytest.raises(SplitError):
            split_graph(records([(0, 1), (1, 2), (2, 3)]), SplitSpec("temporal"))

    def test_bad_spec(self):
        with pytest.raises(ValueError):
            SplitSpec("temporal", 1.0)
        with pytest.raises(ValueError):
            SplitSpec("shuffled")
        with pytest.raises(ValueError):
            SplitSpec("other")

    @given(st.integers(0, 500))
    @settings(max_examples=50, deadline=None)
    def test_invariants(self, seed):
        g = sample_er(30, 0.25, seed)
        try:
            s = split_graph(g, SplitSpec("shuffled", seed=seed))
        except SplitError:
            return
        assert not (edge_set(s.old) & edge_set(s.new))
        assert s.old.node_count == s.new.node_count == len(s.nodes)
        # every V* node touches an old edge; new edges stay inside V*
        assert np.all(s.old.degrees > 0)
        assert edge_set(s.old, s.nodes) | edge_set(s.new, s.nodes) <= edge_set(g)


class TestCandidates:
    def test_all_strategy_counts(self):
        old = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        new = Graph.from_edges(5, [(0, 2), (1, 3)])
        c = generate_candidates(old, new, "all")
        assert len(c) == 10 - 4
        assert c.positives == 2
        assert {tuple(p) for p, l in zip(c.pairs, c.labels) if l} == {(0, 2), (1, 3)}

    def test_empty_new_graph(self):
        old = Graph.from_edges(5, [(0, 1), (1, 2)])
        with pytest.raises(ValueError, match="positive"):
            generate_candidates(old, Graph.empty(5))

    def test_ratio(self):
        g = sample_er(60, 0.1, 4)
        s = split_graph(g, SplitSpec("shuffled", seed=1))
        c = generate_candidates(s.old, s.new, 10, seed=2)
        assert len(c) - c.positives == 10 * c.positives
        d = generate_candidates(s.old, s.new, 10, seed=2)
        assert np.array_equal(c.pairs, d.pairs)
        big = generate_candidates(s.old, s.new, 1e6, seed=2)
        assert len(big) == len(generate_candidates(s.old, s.new, "all"))

    def test_dense_ratio_path(self):
        old = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
        new = Graph.from_edges(6, [(0, 2)])
        c = generate_candidates(old, new, 5, seed=0)
        assert c.positives == 1 and len(c) == 6

    def test_pairs_are_non_edges(self):
        g = sample_er(30, 0.3, 5)
        s = split_graph(g, SplitSpec("shuffled", seed=0))
        c = generate_candidates(s.old, s.new, 3, seed=1)
        assert not any(s.old.has_edge(u, v) for u, v in c.pairs)
        assert all(s.new.has_edge(u, v) == bool(l) for (u, v), l in zip(c.pairs, c.labels))
        assert np.all(c.pairs[:, 0] < c.pairs[:, 1])


class TestPairFeatures:
    def test_no_common_neighbour(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        f = pair_features(g, [(0, 2)])
        assert (f.cn[0], f.aa[0], f.ra[0]) == (0.0, 0.0, 0.0)

    def test_one_common_neighbour(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        f = pair_features(g, [(0, 2)])
        assert f.cn[0] == 1
        assert f.aa[0] == pytest.approx(1 / math.log(2), abs=1e-15)
        assert abs(f.aa[0] - 1.4427) < 1e-4
        assert f.ra[0] == 0.5

    def test_diamond(self, diamond):
        a, d = diamond.index_of("a"), diamond.index_of("d")
        f = pair_features(diamond, [(a, d)])
        assert f.cn[0] == 2
        assert f.aa[0] == pytest.approx(2 / math.log(3), abs=1e-15)
        assert f.ra[0] == pytest.approx(2 / 3, abs=1e-15)
        assert f.i_u[0] == 1.0 and f.o_u[0] == 0.5

    def test_existing_edge_rejected(self, diamond):
        with pytest.raises(ValueError, match="existing edge"):
            pair_features(diamond, [(0, 1)])

    def test_undefined_coefficients_zero(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2)])
        f = pair_features(g, [(0, 3)])
        assert (f.c_u[0], f.c_v[0], f.i_u[0], f.o_v[0]) == (0.0, 0.0, 0.0, 0.0)

    @given(small_graphs(max_nodes=30))
    @settings(max_examples=100, deadline=None)
    def test_bruteforce(self, g):
        nb = [set(map(int, g.neighbors(i))) for i in range(g.node_count)]
        pairs = [(u, v) for u in range(g.node_count) for v in range(u + 1, g.node_count) if v not in nb[u]]
        if not pairs:
            return
        f = pair_features(g, pairs)
        r = full_report(g)
        for t, (u, v) in enumerate(pairs):
            common = sorted(nb[u] & nb[v])
            aa = 0.0
            ra = 0.0
            for z in common:
                if len(nb[z]) > 1:
                    aa += 1.0 / math.log(len(nb[z]))
                ra += 1.0 / len(nb[z])
            assert f.cn[t] == len(common)
            assert f.aa[t] == aa
            assert f.ra[t] == ra
            for name, col in (("C", f.c_u), ("E", f.e_u), ("I", f.i_u), ("O", f.o_u)):
                want = getattr(r, name)[u]
                assert col[t] == (0.0 if math.isnan(want) else want)

    def test_csv(self, diamond):
        a, d = diamond.index_of("a"), diamond.index_of("d")
        f = pair_features(diamond, [(a, d)], labels=[1])
        buf = io.StringIO()
        write_pair_features_csv(f, diamond, buf, seed=4, repeat_index=2)
        head, row = buf.getvalue().splitlines()
        assert head == "u,v,cn,aa,ra,c_u,c_v,e_u,e_v,i_u,i_v,o_u,o_v,label,seed,repeat_index"
        assert row.startswith("a,d,2.0,")
        assert row.endswith(",1,4,2")


class TestRocAuc:
    def test_perfect(self):
        assert roc_auc([0.1, 0.2, 0.8, 0.9], [0, 0, 1, 1]) == 1.0

    def test_constant(self):
        assert roc_auc([0.3] * 6, [0, 1, 0, 1, 1, 0]) == 0.5

    def test_four_points(self):
        # positive/negative pairs: (0.35, 0.1) (0.35, 0.4) (0.8, 0.1) (0.8, 0.4) -> 3 of 4
        assert roc_auc([0.1, 0.4, 0.35, 0.8], [0, 0, 1, 1]) == 0.75

    def test_single_class(self):
        with pytest.raises(ValueError):
            roc_auc([0.1, 0.2], [1, 1])

    @given(st.lists(st.tuples(st.integers(-20, 20), st.booleans()), min_size=2, max_size=50))
    @settings(max_examples=200, deadline=None)
    def test_monotone_invariance_and_pairs(self, data):
        s, y = map(np.array, zip(*data))
        if y.all() or not y.any():
            return
        a = roc_auc(s, y)
        assert roc_auc(s ** 3 + 5 * s - 2, y) == pytest.approx(a, abs=1e-12)
        pos, neg = s[y], s[~y]
        ref = ((pos[:, None] > neg[None, :]).sum() + 0.5 * (pos[:, None] == neg[None, :]).sum())
        assert a == pytest.approx(ref / (len(pos) * len(neg)), abs=1e-12)


class TestSmokeClassifier:
    def test_separable(self):
        rng = np.random.default_rng(0)
        x = np.vstack([rng.normal(-2, 1, (100, 3)), rng.normal(2, 1, (100, 3))])
        y = np.r_[np.zeros(100), np.ones(100)]
        m = train_smoke_classifier(x, y)
        assert roc_auc(score(m, x), y) > 0.99

    def test_shuffled_labels(self):
        rng = np.random.default_rng(1)
        x = rng.normal(size=(2000, 4))
        y = rng.integers(0, 2, 2000)
        m = train_smoke_classifier(x[:1000], y[:1000])
        assert abs(roc_auc(score(m, x[1000:]), y[1000:]) - 0.5) < 0.1

    def test_single_class(self):
        with pytest.raises(ValueError):
            train_smoke_classifier(np.ones((4, 2)), np.ones(4))

    def test_deterministic(self):
        rng = np.random.default_rng(2)
        x, y = rng.normal(size=(50, 2)), rng.integers(0, 2, 50)
        a, b = train_smoke_classifier(x, y), train_smoke_classifier(x, y)
        assert np.array_equal(a.coef, b.coef) and a.intercept == b.intercept


def test_pipeline_on_configuration_model():
    g = sample_configuration_model(DegreeSequence.regular(300, 6), 4)
    run = run_link_prediction(g, SplitSpec("shuffled", seed=5), negatives=10)
    assert set(run.auc) == set(FEATURE_SETS)
    assert all(0.0 <= v <= 1.0 for v in run.auc.values())
    assert run.test_positives > 0 and run.train_positives > 0
