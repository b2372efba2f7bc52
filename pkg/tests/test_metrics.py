import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nucleus.forest import contract_chains, decompose, filter_by_size
from nucleus.graph import Graph, random_graph
from nucleus.metrics import (
    density_bin,
    density_histogram,
    density_violations,
    histogram_csv,
    overlap_analysis,
    overlap_histogram,
    overlaps_csv,
    scatter_csv,
    size_density_scatter,
)

from conftest import clique_edges


def test_single_full_density(k5):
    _, f = decompose(k5, 3, 4)
    h = density_histogram(f)
    assert len(h.counts) == 20 and h.counts[-1] == 1 and h.total == 1
    assert h.bin_edges[0] == 0 and h.bin_edges[-1] == 1


def test_empty_view_histogram(k5):
    _, f = decompose(k5, 3, 4)
    h = density_histogram(filter_by_size(f, 10), min_size=10)
    assert h.total == 0 and len(h.counts) == 20


def test_shared_pair_filtering(shared_edge_k4s):
    _, f = decompose(shared_edge_k4s, 3, 4)
    assert density_histogram(filter_by_size(f, 10)).total == 0
    assert density_histogram(filter_by_size(f, 4)).counts[-1] == 2


def test_bin_boundaries():
    assert density_bin(Fraction(1, 20), 20) == 1
    assert density_bin(Fraction(1, 20) - Fraction(1, 10**9), 20) == 0
    assert density_bin(Fraction(1), 20) == 19
    assert density_bin(Fraction(0), 20) == 0


@pytest.mark.parametrize("w", [0.3, 0, 1.5, 0.07])
def test_bad_bin_width(k5, w):
    _, f = decompose(k5, 3, 4)
    with pytest.raises(ValueError):
        density_histogram(f, w)


def test_other_bin_widths(k5):
    _, f = decompose(k5, 3, 4)
    assert len(density_histogram(f, 0.1).counts) == 10
    assert len(density_histogram(f, Fraction(1, 4)).counts) == 4


def test_scatter_k5(k5):
    _, f = decompose(k5, 3, 4)
    assert size_density_scatter(filter_by_size(f, 5)) == [(5, 1.0)]
    assert scatter_csv(size_density_scatter(f)) == "size,density\n5,1.000000\n"


def test_overlap_shared_pair(shared_edge_k4s):
    _, f = decompose(shared_edge_k4s, 3, 4)
    (rec,) = overlap_analysis(f, 1)
    assert (rec.node_a, rec.node_b, rec.overlap_vertices) == (0, 1, 2)
    assert rec.jaccard == Fraction(2, 6)
    assert rec.density_a == rec.density_b == 1
    assert overlap_analysis(f, 3) == []
    assert overlap_histogram([rec]) == {2: 1}
    assert overlaps_csv([rec]).splitlines() == [
        "node_a,node_b,overlap,jaccard,density_hi,density_lo",
        "0,1,2,0.333333,1.000000,1.000000",
    ]


def test_overlap_on_chain_is_empty():
    edges = clique_edges(range(6)) + [(6, 0), (6, 1), (6, 2), (7, 6), (7, 0), (8, 7)]
    _, f = decompose(Graph.from_edges(edges), 1, 2)
    assert overlap_analysis(f) == [] and overlap_analysis(contract_chains(f)) == []


def test_overlap_bad_min(k5):
    _, f = decompose(k5, 3, 4)
    with pytest.raises(ValueError):
        overlap_analysis(f, 0)


def brute_overlaps(f, min_overlap):
    out = {}
    for a in range(len(f)):
        for b in range(a + 1, len(f)):
            if f.is_ancestor(a, b) or f.is_ancestor(b, a):
                continue
            common = len(set(f.vertex_sets[a].tolist()) & set(f.vertex_sets[b].tolist()))
            if common >= min_overlap:
                out[frozenset((a, b))] = common
    return out


@given(st.integers(5, 22), st.sampled_from([0.3, 0.5, 0.7]), st.integers(0, 2**20), st.integers(1, 3))
def test_overlaps_match_all_pairs(n, p, seed, min_overlap):
    g = random_graph(n, p, seed)
    for r, s in [(2, 3), (3, 4), (1, 3)]:
        ka, f = decompose(g, r, s)
        recs = overlap_analysis(f, min_overlap)
        assert {frozenset((x.node_a, x.node_b)): x.overlap_vertices for x in recs} == brute_overlaps(f, min_overlap)
        for x in recs:
            assert x.density_a >= x.density_b
            union = f.sizes[x.node_a] + f.sizes[x.node_b] - x.overlap_vertices
            assert x.jaccard == Fraction(x.overlap_vertices, int(union))
            # overlapping non-nested nuclei never share a K_r
            assert not set(f.member_rcliques(x.node_a).tolist()) & set(f.member_rcliques(x.node_b).tolist())


@given(st.integers(5, 20), st.integers(0, 2**20))
def test_histogram_counts_order_free(n, seed):
    g = random_graph(n, 0.5, seed)
    _, f = decompose(g, 2, 3)
    view = f.view()
    h = density_histogram(view)
    assert h.total == len(view)
    ids = list(view.ids)
    random.Random(seed).shuffle(ids)
    view.ids = ids
    assert density_histogram(view) == h
    assert size_density_scatter(view) == sorted(size_density_scatter(view))


def test_histogram_csv_rows(k5):
    _, f = decompose(k5, 3, 4)
    lines = histogram_csv(density_histogram(f, 0.5)).splitlines()
    assert lines == ["bin_low,bin_high,count", "0.000000,0.500000,0", "0.500000,1.000000,1"]


def test_density_violations_reported_not_raised():
    g = random_graph(40, 0.3, 9)
    _, f = decompose(g, 1, 2)
    for parent, child in density_violations(f):
        assert f.density_exact(child) < f.density_exact(parent)
