"""Graph construction, wake-up law, and structural constants."""

import itertools

import numpy as np
import pytest

from catgossip import network
from catgossip.errors import DisconnectedGraph, InvalidEdge


def test_complete_graph_shape():
    g = network.build_complete(4)
    assert g.degrees == (3, 3, 3, 3)
    assert g.diameter == 1
    assert g.max_degree == 3
    assert len(g.edges()) == 6


def test_path_graph_shape():
    g = network.build_path(5)
    assert g.degrees == (1, 2, 2, 2, 1)
    assert g.diameter == 4


def test_disconnected_rejected():
    with pytest.raises(DisconnectedGraph):
        network.build_from_edge_list(4, [(0, 1), (2, 3)])


def test_invalid_edges_rejected():
    with pytest.raises(InvalidEdge):
        network.build_from_edge_list(3, [(0, 0), (0, 1), (1, 2)])
    with pytest.raises(InvalidEdge):
        network.build_from_edge_list(3, [(0, 1), (1, 0), (1, 2)])
    with pytest.raises(InvalidEdge):
        network.build_from_edge_list(3, [(0, 5), (0, 1), (1, 2)])
    with pytest.raises(InvalidEdge):
        network.build_complete(1)


def test_edge_list_parsing(tmp_path):
    text = "# ring of four\n0 1\n1 2\n2 3  # wrap\n3 0\n"
    edges = network.parse_edge_list(text)
    assert edges == [(0, 1), (1, 2), (2, 3), (3, 0)]
    path = tmp_path / "ring.edges"
    path.write_text(text)
    g = network.load_edge_file(path, 4)
    assert g.degrees == (2, 2, 2, 2)
    assert g.diameter == 2
    with pytest.raises(InvalidEdge):
        network.parse_edge_list("0 1 2\n")


def _brute_force_diameter(g: network.Graph) -> int:
    # Floyd-Warshall, independent of the BFS used by the library
    n = g.n
    inf = 10**9
    dist = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for u, w in g.edges():
        dist[u][w] = dist[w][u] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if dist[i][k] + dist[k][j] < dist[i][j]:
                    dist[i][j] = dist[i][k] + dist[k][j]
    return max(map(max, dist))


def test_bfs_diameter_matches_floyd_warshall(rng):
    for n in range(3, 10):
        for _ in range(10):
            edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < 0.4]
            try:
                g = network.build_from_edge_list(n, edges)
            except DisconnectedGraph:
                continue
            assert g.diameter == _brute_force_diameter(g)


def test_edge_probability_values():
    k3 = network.build_complete(3)
    assert network.edge_probability(k3, 0, 1) == pytest.approx(1.0 / 3.0)
    p3 = network.build_path(3)
    assert network.edge_probability(p3, 0, 1) == pytest.approx(0.5)
    assert network.edge_probability(p3, 0, 2) == 0.0
    with pytest.raises(InvalidEdge):
        network.edge_probability(p3, 1, 1)


def test_edge_probabilities_sum_to_one():
    for g in (
        network.build_complete(7),
        network.build_path(6),
        network.build_from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]),
    ):
        total = sum(network.edge_probability(g, u, w) for u, w in g.edges())
        assert total == pytest.approx(1.0, abs=1e-12)


def test_sample_pair_two_agents():
    g = network.build_complete(2)
    r = np.random.default_rng(0)
    for _ in range(20):
        v, w = network.sample_pair(g, r)
        assert {v, w} == {0, 1}


def test_sample_pair_deterministic():
    g = network.build_path(6)
    r1 = np.random.default_rng(7)
    r2 = np.random.default_rng(7)
    assert [network.sample_pair(g, r1) for _ in range(200)] == [
        network.sample_pair(g, r2) for _ in range(200)
    ]


def test_sample_pair_marginals_match_edge_probability():
    # 10^6 draws on five fixed graphs; empirical frequencies within 3 sigma
    graphs = [
        network.build_complete(5),
        network.build_path(3),
        network.build_path(7),
        network.build_from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
        network.build_from_edge_list(5, [(0, 1), (0, 2), (0, 3), (0, 4)]),
    ]
    n_draws = 1_000_000
    for gi, g in enumerate(graphs):
        r = np.random.default_rng(100 + gi)
        counts = {e: 0 for e in g.edges()}
        for _ in range(n_draws):
            v, w = network.sample_pair(g, r)
            counts[(min(v, w), max(v, w))] += 1
        for e, c in counts.items():
            p = network.edge_probability(g, *e)
            sigma = np.sqrt(p * (1 - p) * n_draws)
            assert abs(c - p * n_draws) <= 3.5 * sigma, (gi, e, c, p)


def test_c_g_constant_examples():
    assert network.c_g_constant(network.build_complete(4)) == 9.0
    assert network.c_g_constant(network.build_path(4)) == 18.0
    assert network.c_g_constant(network.build_complete(2)) == 1.0
