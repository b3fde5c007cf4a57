"""Graph model, clique oracle, spectral certificate, and walk enumeration checks."""

import math

import pytest

from sparsef2.errors import InputError, ResourceError, ValidationError
from sparsef2.graphs import (
    Graph,
    enumerate_walks,
    find_clique,
    is_clique,
    planted_clique,
    random_graph,
    random_regular,
    sample_walks,
    spectral_certificate,
)


def test_graph_validation():
    with pytest.raises(ValidationError):
        Graph(3, ((1, 1),))
    with pytest.raises(ValidationError):
        Graph(3, ((2, 1),))
    with pytest.raises(ValidationError):
        Graph(2, ((1, 3),))


def test_find_clique_triangle_and_path():
    assert find_clique(Graph.complete(3), 3) == frozenset({1, 2, 3})
    path = Graph.from_edges(3, [(1, 2), (2, 3)])
    assert find_clique(path, 3) is None
    assert find_clique(path, 2) == frozenset({1, 2})
    with pytest.raises(InputError):
        find_clique(path, 4)


def test_planted_clique_witness_is_clique():
    for seed in range(20):
        g, witness = planted_clique(8, 4, 0.2, seed)
        assert len(witness) == 4
        assert is_clique(g, witness)
        assert find_clique(g, 4) is not None


def test_random_graph_extremes():
    assert random_graph(5, 0.0, 1).num_edges == 0
    assert random_graph(5, 1.0, 1).num_edges == 10


def test_random_graph_deterministic():
    assert random_graph(9, 0.4, 123) == random_graph(9, 0.4, 123)
    assert random_graph(9, 0.4, 123) != random_graph(9, 0.4, 124)


def test_spectral_complete_graph():
    # K_n spectrum is {n-1, -1, ..., -1}: second-largest absolute value is 1.
    for n in (4, 7, 10):
        cert = spectral_certificate(Graph.complete(n), seed=0)
        assert abs(cert.lam - 1.0) <= 1e-6


def test_spectral_odd_cycle():
    # C_n spectrum is {2cos(2 pi j / n)}: for odd n the second-largest
    # absolute value is 2cos(pi/n), attained near the angle pi.
    for n in (5, 9, 11):
        cert = spectral_certificate(Graph.cycle(n), seed=1)
        assert abs(cert.lam - 2 * math.cos(math.pi / n)) <= 1e-5


def test_spectral_even_cycle_bipartite():
    cert = spectral_certificate(Graph.cycle(6), seed=2)
    assert abs(cert.lam - 2.0) <= 1e-6


def test_random_regular_degrees_and_gap():
    g, cert = random_regular(100, 8, seed=5)
    assert g.degrees() == [8] * 100
    assert cert.lam < 8.0
    g2, cert2 = random_regular(100, 8, seed=5)
    assert g == g2 and cert.lam == cert2.lam


def test_random_regular_complete_special_case():
    g, cert = random_regular(6, 5, seed=0)
    assert g == Graph.complete(6)
    assert abs(cert.lam - 1.0) <= 1e-6


def test_random_regular_rejects_odd_product():
    with pytest.raises(InputError):
        random_regular(5, 3, seed=0)


def test_enumerate_walks_counts():
    k4 = Graph.complete(4)
    assert len(enumerate_walks(k4, 1)) == 4
    assert len(enumerate_walks(k4, 2)) == 12
    c4 = Graph.cycle(4)
    walks = enumerate_walks(c4, 3)
    assert len(walks) == 16
    adj = c4.adjacency()
    for w in walks:
        assert all(w[i + 1] in adj[w[i]] for i in range(len(w) - 1))
    with pytest.raises(ResourceError):
        enumerate_walks(k4, 12, cap=1000)


def test_walk_count_matches_formula():
    for n, d, seed in ((12, 3, 0), (10, 4, 1)):
        g, _ = random_regular(n, d, seed)
        for t in (1, 2, 3):
            assert len(enumerate_walks(g, t)) == n * d ** (t - 1)


def test_sample_walks_deterministic_and_valid():
    g, _ = random_regular(30, 4, seed=9)
    a = sample_walks(g, 5, 50, seed=3)
    b = sample_walks(g, 5, 50, seed=3)
    assert a == b
    adj = g.adjacency()
    for w in a:
        assert all(w[i + 1] in adj[w[i]] for i in range(4))
