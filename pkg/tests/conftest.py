"""Shared fixtures: seeded generators and small graphs."""
import numpy as np
import pytest

from rumor_gossip.services.graph_service import complete_graph, from_edge_list


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture
def path3():
    return from_edge_list(3, [(0, 1), (1, 2)])


@pytest.fixture
def star5():
    """Center 0 with leaves 1..4."""
    return from_edge_list(5, [(0, leaf) for leaf in range(1, 5)])


@pytest.fixture
def k4():
    return complete_graph(4)


def random_connected_graph(n, extra_edges, rng):
    """A random spanning tree plus extra random edges."""
    edges = [(int(rng.integers(v)), v) for v in range(1, n)]
    for _ in range(extra_edges):
        u, v = rng.choice(n, size=2, replace=False)
        edges.append((int(u), int(v)))
    return from_edge_list(n, edges)
