import networkx as nx
import pytest
import numpy as np
from hypothesis import settings, strategies as st

from homcyl.graphs import build_graph
from homcyl.randomgen import random_spec

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=7, loops=False, connected=False):
    n = draw(st.integers(min_n, max_n))
    labels = [f"v{i}" for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i if loops else i + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [(labels[i], labels[j]) for (i, j), keep in zip(pairs, chosen) if keep]
    if connected:
        for i in range(1, n):
            j = draw(st.integers(0, i - 1))
            edges.append((labels[j], labels[i]))
    return build_graph(labels, edges, "G")


@st.composite
def specs(draw, n=2, max_a=3, max_b=4, max_c=4):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_spec(np.random.default_rng(seed), max_a=max_a, max_b=max_b, max_c=max_c, n=n)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
