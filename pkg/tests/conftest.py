import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from quadcoef import Graph, graph_from_edge_pairs
from quadcoef.nullmodels import sample_er


def named(pairs):
    return graph_from_edge_pairs(pairs)


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return Graph.from_edges(n, list(itertools.combinations(range(n), 2)))


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


@pytest.fixture
def diamond():
    # K4 minus the edge a-d
    return named([("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")])


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def c4():
    return cycle(4)


def er_graphs(count, seed=0, n_max=30):
    """Seeded G(n, p) graphs over n <= n_max and p in {0.1, ..., 0.9}."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        n = int(rng.integers(2, n_max + 1))
        p = round(0.1 * (1 + k % 9), 1)
        out.append(sample_er(n, p, (seed, k)))
    return out


@st.composite
def small_graphs(draw, max_nodes=12):
    n = draw(st.integers(1, max_nodes))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def weighted_graphs(draw, max_nodes=10):
    g = draw(small_graphs(max_nodes))
    w = draw(st.lists(st.floats(0.01, 1.0), min_size=g.edge_count, max_size=g.edge_count))
    return Graph.from_edges(g.node_count, g.edges(), weights=np.array(w, dtype=np.float64))


# -- acceptance summary --------------------------------------------------------------

ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, status, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {num:>2} {status:<4} {name}: {detail}")
