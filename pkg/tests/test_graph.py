import io
from collections import Counter
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as sps

import bruteforce
from triadic import (
    EdgeListParseError,
    Graph,
    GraphCacheError,
    PreconditionError,
    degree_index,
    generators,
    has_edge,
    load_edge_list,
    load_graph,
    random_neighbor_pair,
    read_graph_cache,
    total_wedges,
    wedge_count,
    write_graph_cache,
)
from triadic.graph import decode_pair, pair_count


def test_load_triangle():
    g = load_edge_list(io.BytesIO(b"0 1\n1 2\n2 0\n"))
    assert (g.n, g.m) == (3, 3)
    assert g.degrees.tolist() == [2, 2, 2]


def test_load_drops_duplicates_and_loops():
    g = load_edge_list(io.BytesIO(b"0 1\n1 0\n0 0\n"))
    assert (g.n, g.m) == (2, 1)


def test_load_snap_comments_and_sparse_labels(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("# Directed graph\n# FromNodeId\tToNodeId\n10\t500\n500\t7\n7\t10\n\n10 500\n")
    g = load_edge_list(path)
    assert g.n == 3 and g.m == 3
    assert g.labels.tolist() == [7, 10, 500]
    assert g.id_map == {7: 0, 10: 1, 500: 2}
    g.validate()


def test_load_text_stream():
    g = load_edge_list(io.StringIO("1 2\n2 3\n"))
    assert g.m == 2


def test_load_empty():
    g = load_edge_list(io.BytesIO(b"# nothing here\n"))
    assert g.n == 0 and g.m == 0
    assert total_wedges(g) == 0


@pytest.mark.parametrize(
    "text, lineno",
    [
        (b"0 1\n1 x\n", 2),
        (b"# c\n0 1\n\n2\n", 4),
        (b"0 1\n-1 2\n", 2),
        (b"a b\n", 1),
    ],
)
def test_parse_error_reports_line(text, lineno):
    with pytest.raises(EdgeListParseError) as info:
        load_edge_list(io.BytesIO(text))
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_wedge_count_small(k4):
    assert [wedge_count(k4, v) for v in range(4)] == [1 * 3] * 4
    tri = generators.complete(3)
    assert wedge_count(tri, 0) == 1
    s = generators.star(5)
    assert wedge_count(s, 0) == 10
    assert wedge_count(s, 3) == 0
    with pytest.raises(IndexError):
        wedge_count(s, 6)


def test_total_wedges_small(k4):
    assert total_wedges(k4) == 12
    assert total_wedges(generators.path(3)) == 1


def test_total_wedges_matches_two_path_enumeration():
    rng = np.random.default_rng(3)
    edges = bruteforce.random_edges(30, 0.2, rng)
    g = generators.from_edges(edges, num_vertices=30)
    assert total_wedges(g) == bruteforce.wedge_paths(bruteforce.dense(edges, 30))


def test_pair_count_no_overflow_near_2_32():
    d = np.array([2**32 - 1, 2**32 - 2, 3], dtype=np.int64)
    expected = [(x * (x - 1)) // 2 for x in d.tolist()]
    assert pair_count(d).tolist() == expected
    assert pair_count(2**40) == (2**40) * (2**40 - 1) // 2


@given(st.integers(min_value=2, max_value=400))
def test_decode_pair_is_bijection(d):
    idx = np.arange(pair_count(d))
    a, b = decode_pair(idx)
    assert np.all((0 <= a) & (a < b) & (b < d))
    assert len(set(zip(a.tolist(), b.tolist()))) == pair_count(d)


@given(st.integers(min_value=0, max_value=2**60))
def test_decode_pair_large_indices(i):
    a, b = decode_pair(i)
    assert 0 <= a < b
    assert pair_count(b) + a == i


def test_neighbor_pair_degree_two():
    g = generators.path(3)
    rng = np.random.default_rng(0)
    for _ in range(20):
        assert random_neighbor_pair(g, 1, rng) == (0, 2)


def test_neighbor_pair_precondition():
    with pytest.raises(PreconditionError):
        random_neighbor_pair(generators.path(3), 0, np.random.default_rng(0))


def test_neighbor_pair_uniform_degree_four():
    g = generators.star(4)
    rng = np.random.default_rng(99)
    draws = 60_000
    counts = Counter(random_neighbor_pair(g, 0, rng) for _ in range(draws))
    assert set(counts) == set(combinations(range(1, 5), 2))
    # multinomial: each cell 10,000 +- 3 sigma
    sigma = np.sqrt(draws * (1 / 6) * (5 / 6))
    for c in counts.values():
        assert abs(c - 10_000) < 3 * sigma
    assert sps.chisquare(list(counts.values())).pvalue > 0.01


def test_neighbor_pair_degree_three_symmetry():
    g = generators.star(3)
    rng = np.random.default_rng(5)
    counts = Counter(random_neighbor_pair(g, 0, rng) for _ in range(30_000))
    assert len(counts) == 3
    assert sps.chisquare(list(counts.values())).pvalue > 0.01


def test_has_edge_small(k4):
    tri = generators.complete(3)
    assert has_edge(tri, 0, 2)
    assert not has_edge(tri, 0, 0)


def test_has_edge_matches_dense():
    rng = np.random.default_rng(8)
    edges = bruteforce.random_edges(30, 0.2, rng)
    g = generators.from_edges(edges, num_vertices=30)
    a = bruteforce.dense(edges, 30)
    for u in range(30):
        for w in range(30):
            assert has_edge(g, u, w) == bool(a[u, w])


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 64), st.floats(0.0, 1.0), st.integers(0, 2**31))
def test_has_edge_dense_oracle_property(n, p, seed):
    rng = np.random.default_rng(seed)
    edges = bruteforce.random_edges(n, p, rng)
    g = generators.from_edges(edges, num_vertices=n)
    g.validate()
    assert np.array_equal(g.to_dense(), bruteforce.dense(edges, n))
    a = bruteforce.dense(edges, n)
    us, ws = np.meshgrid(np.arange(n), np.arange(n))
    from triadic import _kernels

    got = _kernels.closed_mask(g.indptr, g.indices, us.ravel().astype(np.int64), ws.ravel().astype(np.int64))
    assert np.array_equal(got, a[us.ravel(), ws.ravel()])


def test_degree_index_small(k4):
    assert degree_index(k4).as_dict() == {3: (4, 12)}
    assert degree_index(generators.star(5)).as_dict() == {1: (5, 0), 5: (1, 10)}
    di = degree_index(generators.star(5))
    assert di.vertices_of(5).tolist() == [0]
    assert di.vertices_of(1).tolist() == [1, 2, 3, 4, 5]
    assert di.vertices_of(7).size == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 60), st.floats(0.0, 0.5), st.integers(0, 2**31))
def test_degree_index_identities(n, p, seed):
    g = generators.gnp(n, p, seed)
    di = degree_index(g)
    assert int(di.counts.sum()) == g.n
    assert int(di.wedges.sum()) == total_wedges(g)
    assert int(g.degrees.sum()) == 2 * g.m
    for d, c in zip(di.degrees, di.counts):
        assert di.vertices_of(d).size == c > 0


def test_cache_round_trip(tmp_path):
    g = load_edge_list(io.BytesIO(b"5 9\n9 12\n12 5\n100 5\n"))
    path = tmp_path / "g.bin"
    write_graph_cache(g, path)
    h = read_graph_cache(path)
    for name in ("indptr", "indices", "labels", "degrees"):
        assert np.array_equal(getattr(g, name), getattr(h, name))
    # byte-exact: writing the reloaded graph reproduces the file
    buf = io.BytesIO()
    write_graph_cache(h, buf)
    assert buf.getvalue() == path.read_bytes()
    assert load_graph(path).m == g.m


def test_cache_layout_little_endian(tmp_path):
    g = generators.complete(3)
    buf = io.BytesIO()
    write_graph_cache(g, buf)
    raw = buf.getvalue()
    assert raw[:8] == b"TRIADGR\x00"
    words = np.frombuffer(raw[8:], dtype="<i8")
    assert words[:3].tolist() == [1, 3, 3]  # version, n, m
    assert words[3:6].tolist() == [2, 2, 2]  # degrees
    assert words[6:12].tolist() == [1, 2, 0, 2, 0, 1]  # adjacency


def test_cache_rejects_garbage():
    with pytest.raises(GraphCacheError):
        read_graph_cache(io.BytesIO(b"not a cache"))
    buf = io.BytesIO()
    write_graph_cache(generators.complete(4), buf)
    with pytest.raises(GraphCacheError):
        read_graph_cache(io.BytesIO(buf.getvalue()[:-8]))


def test_validate_catches_asymmetry():
    bad = Graph(np.array([0, 1, 1]), np.array([1]), np.array([0, 1]))
    with pytest.raises(ValueError):
        bad.validate()


def test_graph_is_read_only(k4):
    with pytest.raises(ValueError):
        k4.indices[0] = 3
