import pytest
from hypothesis import given, strategies as st

from nucleus.errors import OracleGuardError
from nucleus.graph import Graph, random_graph
from nucleus.oracle import all_cliques, oracle, oracle_kappa, oracle_nuclei

from conftest import PAIRS, clique_edges


def test_k5_nuclei(k5):
    (only,) = oracle_nuclei(k5, 3, 4, 2)
    assert len(only) == 10
    assert oracle_nuclei(k5, 3, 4, 3) == []


def test_shared_edge_pair(shared_edge_k4s):
    found = oracle_nuclei(shared_edge_k4s, 3, 4, 1)
    assert [sorted({v for t in c for v in t}) for c in found] == [[0, 1, 2, 3], [0, 1, 4, 5]]
    assert all(len(c) == 4 for c in found)


def test_cycle_cores():
    c5 = Graph.from_edges([(i, (i + 1) % 5) for i in range(5)])
    assert set(oracle_kappa(c5, 1, 2).values()) == {2}


def test_k4_edges():
    k4 = Graph.from_edges(clique_edges(range(4)))
    assert oracle_kappa(k4, 2, 3) == {e: 2 for e in clique_edges(range(4))}


def test_guard():
    g = Graph.from_edges([(i, i + 1) for i in range(31)])
    assert g.n == 32
    with pytest.raises(OracleGuardError):
        oracle_kappa(g, 1, 2)
    with pytest.raises(OracleGuardError):
        oracle_nuclei(g, 1, 2, 1)


def test_all_cliques_k5(k5):
    assert len(all_cliques(k5, 4)) == 5


@given(st.integers(0, 14), st.sampled_from([0.3, 0.6]), st.integers(0, 2**20), st.sampled_from(PAIRS))
def test_nuclei_disjoint_and_laminar(n, p, seed, rs):
    g = random_graph(n, p, seed)
    res = oracle(g, *rs)
    by_level = {}
    for k, c in res.nuclei:
        by_level.setdefault(k, []).append(c)
    for k, comps in by_level.items():
        seen = set()
        for c in comps:
            assert not (seen & c)
            seen |= c
            assert all(res.kappa[R] >= k for R in c)
        # every level-k nucleus sits inside exactly one level-(k-1) nucleus
        for c in comps:
            if k > 1:
                assert sum(c <= d for d in by_level[k - 1]) == 1
