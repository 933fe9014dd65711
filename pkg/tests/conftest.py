"""
Shared fixtures and hypothesis strategies for small random instances
"""
from itertools import combinations

import numpy as np
import pytest
from hypothesis import strategies as st

from instances.expansion import BmcpInstance
from model.instance import WeightedGraph


@st.composite
def graphs(draw, max_n=8, max_d=4, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    edges = [(u, v, draw(st.integers(1, max_d))) for u, v in chosen]
    return WeightedGraph(n, edges)


@st.composite
def graphs_with_coloring(draw, max_n=8, max_d=4, max_color=10):
    graph = draw(graphs(max_n=max_n, max_d=max_d))
    colors = draw(st.lists(st.integers(1, max_color), min_size=graph.n, max_size=graph.n))
    return graph, np.array(colors, dtype=np.int64)


@st.composite
def bmcp_instances(draw, max_n=6, max_w=3, max_d=4):
    graph = draw(graphs(max_n=max_n, max_d=max_d))
    weights = draw(st.lists(st.integers(1, max_w), min_size=graph.n, max_size=graph.n))
    loops = draw(st.lists(st.integers(1, max_d), min_size=graph.n, max_size=graph.n))
    return BmcpInstance(WeightedGraph(graph.n, graph.edges, loop_distance=loops, multiplicity=weights))


def random_graph(rng: np.random.Generator, n: int, density: float, max_d: int) -> WeightedGraph:
    edges = [
        (u, v, int(rng.integers(1, max_d + 1)))
        for u, v in combinations(range(1, n + 1), 2)
        if rng.random() < density
    ]
    return WeightedGraph(n, edges)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(12345))


@pytest.fixture
def triangle():
    return WeightedGraph(3, [(1, 2, 2), (2, 3, 2), (1, 3, 2)])


@pytest.fixture
def clique_example():
    """u with w=2, d(u,u)=3; v with w=1; edge (u, v) with d=2"""
    return BmcpInstance(WeightedGraph(2, [(1, 2, 2)], loop_distance=[3, 1], multiplicity=[2, 1]))


@pytest.fixture
def write_instance(tmp_path):
    def write(name: str, text: str):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return write
