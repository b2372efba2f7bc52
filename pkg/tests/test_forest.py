import itertools
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nucleus.errors import ConsistencyError, InvariantError
from nucleus.forest import (
    PALETTE,
    build_forest,
    check_invariants,
    contract_chains,
    decompose,
    density_color,
    filter_by_size,
    forest_to_dict,
    forest_to_dot,
    forest_to_json,
    nucleus_vertices,
    size_shape,
)
from nucleus.graph import Graph, induced_density, load_graph, random_graph
from nucleus.oracle import oracle, oracle_nuclei
from nucleus.peel import set_k

from conftest import PAIRS, clique_edges

graphs = st.builds(
    random_graph,
    st.integers(0, 20),
    st.sampled_from([0.2, 0.4, 0.6, 0.8]),
    st.integers(0, 2**20),
)


def nested_chain():
    # cores: {0..5} at 5, +6 at 3, +7 at 2, +8 at 1
    edges = clique_edges(range(6)) + [(6, 0), (6, 1), (6, 2), (7, 6), (7, 0), (8, 7)]
    return Graph.from_edges(edges, num_vertices=9)


def two_k5_bridge():
    edges = clique_edges(range(5)) + clique_edges(range(5, 10)) + [(10, 0), (10, 5)]
    return Graph.from_edges(edges, num_vertices=11)


def forest_levels(f, ka):
    out = set()
    for v in range(len(f)):
        p = f.node_parent[v]
        lo = int(f.node_k[p]) if p >= 0 else 0
        members = frozenset(ka.index.clique(i) for i in f.member_rcliques(v).tolist())
        out.update((k, members) for k in range(lo + 1, int(f.node_k[v]) + 1))
    return out


def test_k5(k5, backend):
    ka, f = decompose(k5, 3, 4, backend=backend)
    assert len(f) == 1
    node = f.node(0)
    assert node.k == 2 and node.parent is None
    assert len(node.member_rcliques) == 10
    assert node.vertex_set.tolist() == [0, 1, 2, 3, 4]
    assert node.density == 1.0


def test_shared_edge_pair_34(shared_edge_k4s, backend):
    ka, f = decompose(shared_edge_k4s, 3, 4, backend=backend)
    assert len(f) == 2 and f.roots == [0, 1]
    sets = sorted(nucleus_vertices(f, v).tolist() for v in range(2))
    assert sets == [[0, 1, 2, 3], [0, 1, 4, 5]]
    assert all(f.node(v).k == 1 and f.density(v) == 1 for v in range(2))
    assert len(set(sets[0]) & set(sets[1])) == 2


def test_shared_edge_pair_23(shared_edge_k4s):
    _, f = decompose(shared_edge_k4s, 2, 3)
    assert len(f) == 1
    assert nucleus_vertices(f, 0).tolist() == list(range(6))


def test_nucleus_vertices_unknown_id(k5):
    _, f = decompose(k5, 3, 4)
    with pytest.raises(KeyError):
        nucleus_vertices(f, 1)
    with pytest.raises(KeyError):
        f.node(-1)


def test_fingerprint_mismatch(k5, shared_edge_k4s):
    ka = set_k(k5, 3, 4)
    with pytest.raises(ConsistencyError):
        build_forest(shared_edge_k4s, ka)
    with pytest.raises(ConsistencyError):
        build_forest(k5, ka, 2, 3)


def test_vertex_sets_match_oracle_g15():
    g = random_graph(15, 0.5, 0)
    for r, s in PAIRS:
        ka, f = decompose(g, r, s)
        for k in range(1, ka.max_kappa + 1):
            want = sorted(sorted({v for t in c for v in t}) for c in oracle_nuclei(g, r, s, k))
            got = sorted(nucleus_vertices(f, v).tolist() for v in f.nuclei_at(k))
            assert got == want


def test_chain_contraction():
    _, f = decompose(nested_chain(), 1, 2)
    assert f.node_k.tolist() == [5, 3, 2, 1]
    assert f.node_parent.tolist() == [1, 2, 3, -1]
    view = contract_chains(f)
    assert view.ids == [0, 3]
    assert view.parent == {0: 3, 3: -1}
    assert view.chain[0] == 3
    # the forest itself is untouched
    assert len(f) == 4 and len(f.view()) == 4


def test_contraction_keeps_branching_tree():
    _, f = decompose(two_k5_bridge(), 1, 2)
    assert len(f) == 3 and f.roots == [2] and f.children[2] == [0, 1]
    view = contract_chains(f)
    assert view.ids == [0, 1, 2]
    assert view.chain == {0: 1, 1: 1, 2: 0}


def test_filter_by_size(k5):
    _, f = decompose(k5, 3, 4)
    assert len(filter_by_size(f, 10)) == 0
    assert filter_by_size(f, 1).ids == [0]
    with pytest.raises(ValueError):
        filter_by_size(f, 0)


def test_filter_relinks_to_nearest_ancestor():
    _, f = decompose(nested_chain(), 1, 2)
    # sizes are 6, 7, 8, 9; dropping < 8 removes the two deepest nodes
    view = filter_by_size(f, 8)
    assert view.ids == [2, 3]
    view = filter_by_size(contract_chains(f), 7)
    assert view.ids == [3]
    g = nested_chain()
    _, f = decompose(g, 1, 2)
    mid = f.view()._relink({0, 3})
    assert mid.parent[0] == 3 and mid.chain[0] == 3


@given(graphs, st.sampled_from(PAIRS))
def test_invariants_hold(g, rs):
    ka, f = decompose(g, *rs)
    check_invariants(f, ka)
    # creation order: descending k, children before parents
    assert np.all(np.diff(f.node_k) <= 0)
    for v in range(len(f)):
        p = f.node_parent[v]
        if p >= 0:
            assert p > v and f.node_k[p] < f.node_k[v]
        if f.sizes[v] >= 2:
            assert f.density_exact(v) == induced_density(g, f.vertex_sets[v])


@given(graphs, st.sampled_from(PAIRS))
def test_forest_equals_oracle(g, rs):
    ka, f = decompose(g, *rs)
    assert forest_levels(f, ka) == set(oracle(g, *rs).nuclei)


@given(graphs, st.sampled_from(PAIRS))
def test_level_counts_match_components(g, rs):
    ka, f = decompose(g, *rs)
    for k in range(1, ka.max_kappa + 1):
        assert len(f.nuclei_at(k)) == len(oracle_nuclei(g, *rs, k))


@given(graphs, st.sampled_from(PAIRS))
def test_backends_build_same_forest(g, rs):
    from conftest import BACKENDS

    results = [decompose(g, *rs, backend=b)[1] for b in BACKENDS]
    for other in results[1:]:
        assert np.array_equal(results[0].node_k, other.node_k)
        assert np.array_equal(results[0].node_parent, other.node_parent)
        assert np.array_equal(results[0].node_of, other.node_of)


@given(graphs, st.sampled_from(PAIRS))
def test_vertex_set_is_union_of_members(g, rs):
    ka, f = decompose(g, *rs)
    for v in range(len(f)):
        members = f.member_rcliques(v)
        assert f.vertex_sets[v].tolist() == sorted({x for i in members.tolist() for x in ka.index.clique(i)})
        assert np.all(ka.kappa[members] >= f.node_k[v])


def test_check_invariants_detects_tampering(shared_edge_k4s):
    ka, f = decompose(shared_edge_k4s, 3, 4)
    f.node_of[0] = 1 - f.node_of[0]
    with pytest.raises(InvariantError):
        check_invariants(f, ka)


def test_sampled_invariants_on_larger_graph():
    g = random_graph(200, 0.08, 3)
    ka, f = decompose(g, 2, 3)
    check_invariants(f, ka, sample=100)


def test_json_empty():
    _, f = decompose(load_graph(b""), 3, 4)
    assert forest_to_json(filter_by_size(contract_chains(f), 10)) == '{"nodes": [], "roots": []}'


def test_json_fields_and_labels():
    g = load_graph("".join(f"{a + 100} {b + 100}\n" for a, b in clique_edges(range(5))).encode())
    _, f = decompose(g, 3, 4)
    d = json.loads(forest_to_json(f.view(), vertices=True))
    assert d == {
        "nodes": [
            {"id": 0, "k": 2, "size": 5, "density": 1.0, "parent": None, "children": [], "chain": 1,
             "vertices": [100, 101, 102, 103, 104]}
        ],
        "roots": [0],
    }
    assert "vertices" not in forest_to_dict(f.view())["nodes"][0]


def test_dot_k5(k5):
    _, f = decompose(k5, 3, 4)
    dot = forest_to_dot(filter_by_size(f, 1))
    nodes = [line for line in dot.splitlines() if line.strip().startswith("n0 [")]
    assert len(nodes) == 1
    assert 'fillcolor="#ff0000"' in nodes[0] and "shape=circle" in nodes[0]
    assert "->" not in dot


def test_dot_chain_labels():
    _, f = decompose(nested_chain(), 1, 2)
    dot = forest_to_dot(contract_chains(f))
    assert 'n3 -> n0 [label="3"];' in dot


def test_palette_and_shapes():
    from fractions import Fraction

    assert len(PALETTE) == 11 and PALETTE[0] == "#0000ff" and PALETTE[-1] == "#ff0000"
    assert density_color(Fraction(0)) == PALETTE[0]
    assert density_color(Fraction(1, 10)) == PALETTE[1]
    assert density_color(Fraction(99, 100)) == PALETTE[9]
    assert [size_shape(x)[0] for x in (2, 100, 101, 1000, 1001, 10000, 10001)] == [
        "circle", "circle", "hexagon", "hexagon", "square", "square", "triangle"
    ]
