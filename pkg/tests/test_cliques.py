import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nucleus.cliques import (
    CliqueIndex,
    build_supergraph,
    count_r_cliques,
    enumerate_r_cliques,
    s_cliques_containing,
    s_degree,
    subset_patterns,
)
from nucleus.errors import CapacityError, UnsupportedParameterError
from nucleus.graph import Graph, random_graph

from conftest import clique_edges
from reference import adjacency, triangles


def brute_cliques(g, r):
    adj = adjacency(g)
    return [t for t in itertools.combinations(range(g.n), r) if all(b in adj[a] for a, b in itertools.combinations(t, 2))]


def test_k4_triangles():
    g = Graph.from_edges(clique_edges(range(4)))
    assert len(enumerate_r_cliques(g, 3)) == 4


def test_shared_edge_pair_triangles(shared_edge_k4s):
    idx = enumerate_r_cliques(shared_edge_k4s, 3)
    assert len(idx) == 8
    assert [idx.clique(i) for i in range(8)] == brute_cliques(shared_edge_k4s, 3)


def test_r1_and_r2():
    g = Graph.from_edges([(0, 1), (1, 2)], num_vertices=4)
    assert enumerate_r_cliques(g, 1).cliques.ravel().tolist() == [0, 1, 2, 3]
    assert enumerate_r_cliques(g, 2).cliques.tolist() == [[0, 1], [1, 2]]


@pytest.mark.parametrize("r", [0, 5, -1])
def test_unsupported_r(r):
    with pytest.raises(UnsupportedParameterError):
        enumerate_r_cliques(Graph.from_edges([(0, 1)]), r)


@pytest.mark.parametrize("r,s", [(3, 3), (2, 5), (4, 4)])
def test_unsupported_s(k5, r, s):
    idx = enumerate_r_cliques(k5, min(r, 4))
    with pytest.raises(UnsupportedParameterError):
        s_cliques_containing(k5, idx, 0, s)


@given(st.integers(0, 25), st.sampled_from([0.2, 0.4, 0.6, 0.9]), st.integers(0, 10**6), st.integers(1, 4))
def test_enumeration_matches_brute_force(n, p, seed, r):
    g = random_graph(n, p, seed)
    idx = enumerate_r_cliques(g, r)
    assert [idx.clique(i) for i in range(len(idx))] == brute_cliques(g, r)
    assert count_r_cliques(g, r) == len(idx)
    assert idx.per_vertex_count.sum() == r * len(idx)


@given(st.integers(1, 20), st.integers(0, 10**6), st.integers(2, 4))
def test_index_lookup_inverse(n, seed, r):
    g = random_graph(n, 0.6, seed)
    idx = enumerate_r_cliques(g, r)
    lookup = idx.index_of_clique
    assert len(lookup) == len(idx)
    for i in range(len(idx)):
        t = idx.clique(i)
        assert lookup[t] == i
        assert idx.index_of(reversed(t)) == i
    non = [t for t in itertools.combinations(range(n), r) if t not in set(lookup)][:20]
    for t in non:
        with pytest.raises(KeyError):
            idx.index_of(t)
    if non:
        assert (idx.index_of_rows(np.array(non)) == -1).all()


def test_s_cliques_k5(k5):
    idx = enumerate_r_cliques(k5, 3)
    for i in range(len(idx)):
        got = s_cliques_containing(k5, idx, i, 4)
        assert len(got) == 2
        assert s_degree(k5, idx, i, 4) == 2
        for row in got.tolist():
            assert set(idx.clique(i)) < set(row)


def test_s_cliques_shared_edge(shared_edge_k4s):
    g = shared_edge_k4s
    e = enumerate_r_cliques(g, 2)
    # brute force: common neighbours of 0 and 1 are 2, 3, 4, 5
    assert s_cliques_containing(g, e, (0, 1), 3).tolist() == [[0, 1, 2], [0, 1, 3], [0, 1, 4], [0, 1, 5]]
    t = enumerate_r_cliques(g, 3)
    for i in range(len(t)):
        assert s_degree(g, t, i, 4) == 1


def test_cycle_has_no_triangles():
    c5 = Graph.from_edges([(i, (i + 1) % 5) for i in range(5)])
    e = enumerate_r_cliques(c5, 2)
    assert all(s_degree(c5, e, i, 3) == 0 for i in range(len(e)))


def test_edge_triangle_counts_g12():
    g = random_graph(12, 0.5, 3)
    adj = adjacency(g)
    e = enumerate_r_cliques(g, 2)
    for i, (a, b) in enumerate(e.cliques.tolist()):
        assert s_degree(g, e, i, 3) == sum(1 for w in range(12) if w in adj[a] and w in adj[b])


@given(st.integers(0, 18), st.sampled_from([0.3, 0.6, 0.9]), st.integers(0, 10**6))
def test_s_degree_matches_listing(n, p, seed):
    g = random_graph(n, p, seed)
    for r in (1, 2, 3):
        idx = enumerate_r_cliques(g, r)
        for s in range(r + 1, 5):
            big = brute_cliques(g, s)
            for i in range(len(idx)):
                R = set(idx.clique(i))
                rows = s_cliques_containing(g, idx, i, s)
                assert sorted(map(tuple, rows.tolist())) == [t for t in big if R <= set(t)]
                assert s_degree(g, idx, i, s) == len(rows)


def test_triangle_k4_incidence():
    g = random_graph(20, 0.6, 11)
    t = enumerate_r_cliques(g, 3)
    total = sum(s_degree(g, t, i, 4) for i in range(len(t)))
    assert total == 4 * count_r_cliques(g, 4)
    assert len(t) == len(triangles(g))


def test_supergraph_of_edges_is_graph():
    g = random_graph(15, 0.3, 2)
    sg = build_supergraph(g, 1, 2)
    assert sorted(map(tuple, sg.links.tolist())) == [tuple(e) for e in g.edges().tolist()]


def test_supergraph_k4():
    g = Graph.from_edges(clique_edges(range(4)))
    sg = build_supergraph(g, 2, 3)
    assert len(sg.nodes) == 6
    assert sg.links.shape == (4, 3)


def test_supergraph_triangle_plus_pendant():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 0), (2, 3)])
    sg = build_supergraph(g, 2, 3)
    assert sg.link_count() == 1
    linked = {sg.nodes.clique(i) for i in sg.links[0].tolist()}
    assert linked == {(0, 1), (0, 2), (1, 2)}
    assert sg.nodes.index_of((2, 3)) not in sg.links


def test_supergraph_link_rows_match_subsets():
    g = random_graph(14, 0.7, 5)
    sg = build_supergraph(g, 2, 4, accept_s4=True)
    pats = subset_patterns(2, 4)
    assert pats.shape == (comb(4, 2), 2)
    for row, link in zip(sg.s_cliques.tolist(), sg.links.tolist()):
        assert [sg.nodes.clique(i) for i in link] == [tuple(row[j] for j in p) for p in pats.tolist()]


def test_supergraph_capacity(k5):
    with pytest.raises(CapacityError):
        build_supergraph(k5, 3, 4)
    with pytest.raises(CapacityError, match="on-demand"):
        build_supergraph(k5, 2, 3, memory_budget=10)


def test_enumeration_budget():
    g = Graph.from_edges(clique_edges(range(12)))
    with pytest.raises(CapacityError):
        enumerate_r_cliques(g, 4, memory_budget=100)


def test_clique_index_rows_read_only(k5):
    idx = enumerate_r_cliques(k5, 3)
    assert isinstance(idx, CliqueIndex)
    with pytest.raises(ValueError):
        idx.cliques[0, 0] = 4
