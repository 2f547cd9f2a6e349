from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import bruteforce
from triadic import (
    UndefinedStatisticError,
    binned_wedge_cc,
    enumerate_triangles,
    exact_stats,
    generators,
    list_triangles,
    log2_bins,
    triangle_degree_ratio_fraction,
)


def _random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    edges = bruteforce.random_edges(n, p, rng)
    return generators.from_edges(edges, num_vertices=n), bruteforce.dense(edges, n)


def test_k4(k4):
    s = exact_stats(k4)
    assert (s.W, s.T, s.C, s.local_cc) == (12, 4, 1.0, 1.0)
    assert s.cc_at(3) == 1.0
    assert s.triangles_at(3) == 4
    assert enumerate_triangles(k4) == 4


def test_petersen_is_triangle_free(petersen):
    s = exact_stats(petersen)
    assert s.T == 0 and s.C == 0.0 and s.W == 30


def test_consumer_receives_each_triangle_once(k4):
    seen = []
    total = enumerate_triangles(k4, seen.append)
    assert total == 4
    assert sorted(t.vertices for t in seen) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    assert all(t.degrees == (3, 3, 3) for t in seen)


def test_low_degree_convention():
    # K3 plus an isolated vertex: C_v = 0 for the isolated one, included in the mean
    g = generators.from_edges([(0, 1), (1, 2), (2, 0)], num_vertices=4)
    s = exact_stats(g)
    assert s.local_cc == 0.75
    assert s.cc_per_vertex.tolist() == [1.0, 1.0, 1.0, 0.0]


@pytest.mark.parametrize("seed", range(12))
def test_matches_cubic_bruteforce(seed):
    n = 8 + 3 * seed
    g, a = _random_graph(n, 0.3, seed)
    ref = bruteforce.stats(a)
    s = exact_stats(g)
    assert s.T == ref["T"] == bruteforce.trace_count(a)
    assert s.W == ref["W"]
    assert s.triangles_per_vertex.tolist() == ref["tv"]
    assert s.C == pytest.approx(float(ref["C"]), abs=1e-15)
    assert s.local_cc == pytest.approx(float(ref["Cbar"]), abs=1e-12)
    for d in ref["cd"]:
        assert s.cc_at(d) == float(ref["cd"][d])
        assert s.triangles_at(d) == ref["td"][d]
    assert sorted(map(tuple, list_triangles(g).tolist())) == ref["triangles"]


def test_gnp_100_against_dense():
    g, a = _random_graph(100, 0.1, 2024)
    ref = bruteforce.stats(a)
    s = exact_stats(g)
    assert s.T == ref["T"]
    assert s.C == float(ref["C"])
    assert s.local_cc == pytest.approx(float(ref["Cbar"]), abs=1e-12)
    for d in ref["cd"]:
        assert s.triangles_at(d) == ref["td"][d]


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 40), st.floats(0.05, 0.9), st.integers(0, 2**31))
def test_enumeration_properties(n, p, seed):
    g, a = _random_graph(n, p, seed)
    tris = list_triangles(g)
    assert tris.shape[0] == bruteforce.trace_count(a)
    rows = set(map(tuple, tris.tolist()))
    assert len(rows) == tris.shape[0]
    assert all(x < y < z for x, y, z in rows)
    s = exact_stats(g)
    assert int(s.triangles_per_vertex.sum()) == 3 * s.T
    # closed wedges by centre degree: n_d * C_d * C(d,2) summed per degree
    assert np.allclose(
        s.vertices_per_degree * s.cc_per_degree * s.wedges_per_degree / np.maximum(s.vertices_per_degree, 1),
        s.closed_wedges_per_degree,
    )
    assert np.all((0 <= s.cc_per_degree) & (s.cc_per_degree <= 1))
    assert np.all(s.triangles_per_degree <= s.T)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 30), st.floats(0.1, 0.9), st.integers(0, 2**31))
def test_partition_identity(n, p, seed):
    """|S_1| + |S_2|/2 + |S_3|/3 = T_d with S_i counted directly from wedges."""
    g, a = _random_graph(n, p, seed)
    deg = a.sum(axis=1)
    s = exact_stats(g)
    for d in s.degree_values:
        if d < 2:
            continue
        counts = [0, 0, 0, 0]
        for c, x, y in bruteforce.wedges(a):
            if deg[c] == d and a[x, y]:
                counts[1 + int(deg[x] == d) + int(deg[y] == d)] += 1
        assert counts[2] % 2 == 0 and counts[3] % 3 == 0
        assert Fraction(counts[1]) + Fraction(counts[2], 2) + Fraction(counts[3], 3) == s.triangles_at(d)
        i = int(np.searchsorted(s.degree_values, d))
        assert [counts[j] for j in (1, 2, 3)] == [j * s.multiplicity[i, j] for j in (1, 2, 3)]


def test_networkx_cross_check():
    nxg = nx.powerlaw_cluster_graph(400, 4, 0.3, seed=1)
    g = generators.from_networkx(nxg)
    s = exact_stats(g)
    assert s.T == sum(nx.triangles(nxg).values()) // 3
    assert s.C == pytest.approx(nx.transitivity(nxg), abs=1e-12)
    assert s.local_cc == pytest.approx(nx.average_clustering(nxg), abs=1e-12)


def test_ratio_fraction_small(k4):
    assert triangle_degree_ratio_fraction(k4, 10) == 0.0
    # centre 0 has degree 10; leaves 1 and 2 are joined
    star = generators.star(10)
    u, v = star.edges()
    g = generators.from_edges(list(zip(u.tolist(), v.tolist())) + [(1, 2)], num_vertices=11)
    assert triangle_degree_ratio_fraction(g, 5) == 1.0


def test_ratio_fraction_undefined(petersen):
    with pytest.raises(UndefinedStatisticError):
        triangle_degree_ratio_fraction(petersen, 2)


def test_ratio_fraction_matches_scan():
    g, a = _random_graph(200, 0.05, 11)
    deg = a.sum(axis=1)
    tris = bruteforce.triangles(a)
    expected = sum(1 for t in tris if max(deg[list(t)]) / min(deg[list(t)]) >= 2) / len(tris)
    assert triangle_degree_ratio_fraction(g, 2) == pytest.approx(expected, abs=1e-15)


def test_binned_oracle_is_wedge_weighted():
    g, a = _random_graph(60, 0.15, 4)
    ref = bruteforce.stats(a)
    s = exact_stats(g)
    bins = log2_bins(g.max_degree)
    got = binned_wedge_cc(s, bins)
    for (lo, hi), val in zip(bins, got):
        members = [v for v in range(60) if lo < ref["deg"][v] <= hi]
        w = sum(ref["wv"][v] for v in members)
        if w == 0:
            assert val is None
        else:
            assert val == pytest.approx(sum(ref["tv"][v] for v in members) / w, abs=1e-15)
