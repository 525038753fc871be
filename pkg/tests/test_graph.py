import gzip
import io
import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seedselect.graph import (
    Graph,
    GraphFormatError,
    assign_costs,
    from_edges,
    heavy_tailed_digraph,
    load_edge_list,
    weighted_cascade,
)


def test_wc_weights_from_in_degree():
    g = load_edge_list(b"0 1\n2 1\n", weighting="wc")
    assert (g.n, g.m) == (3, 2)
    assert g.p.tolist() == [0.5, 0.5]


def test_explicit_weight_echo():
    g = load_edge_list(b"0 1 0.3\n", weighting="explicit")
    assert (g.n, g.m) == (2, 1)
    assert g.p[0] == 0.3


def test_comments_blank_lines_and_dense_remap():
    text = b"# header\n\n10 7\n7 42\n# mid comment\n42 10\n"
    g = load_edge_list(text)
    assert g.labels.tolist() == [10, 7, 42]
    assert g.src.tolist() == [0, 1, 2]
    assert g.dst.tolist() == [1, 2, 0]
    assert g.node_id(42) == 2


def test_remap_is_stable_across_reloads():
    text = b"5 3\n3 9\n9 5\n1 5\n"
    assert load_edge_list(text) == load_edge_list(text)


@pytest.mark.parametrize(
    "text, weighting, fragment",
    [
        (b"0 1\nfoo bar\n", "wc", "line 2"),
        (b"0 1\n0\n", "wc", "line 2"),
        (b"0 1 1.5\n", "explicit", "outside"),
        (b"0 1 -0.1\n", "explicit", "outside"),
        (b"0 1\n0 1\n", "wc", "duplicate"),
        (b"# only comments\n", "wc", "empty"),
        (b"", "wc", "empty"),
        (b"0 1\n", "explicit", "line 1"),
        (b"-1 2\n", "wc", "negative"),
    ],
)
def test_load_errors(text, weighting, fragment):
    with pytest.raises(GraphFormatError, match=fragment):
        load_edge_list(text, weighting=weighting)


def test_undirected_loads_both_directions_before_weighting():
    g = load_edge_list(b"0 1\n1 2\n", orientation="undirected")
    assert g.m == 4
    pairs = set(zip(g.src.tolist(), g.dst.tolist()))
    assert pairs == {(0, 1), (1, 0), (1, 2), (2, 1)}
    # node 1 has in-degree 2 after bidirecting
    w = dict(zip(zip(g.src.tolist(), g.dst.tolist()), g.p.tolist()))
    assert w[(0, 1)] == 0.5 and w[(2, 1)] == 0.5 and w[(1, 0)] == 1.0


def test_undirected_duplicate_rejected():
    with pytest.raises(GraphFormatError, match="duplicate"):
        load_edge_list(b"0 1\n1 0\n", orientation="undirected")


def test_gzip_and_file_sources(tmp_path):
    path = tmp_path / "g.txt.gz"
    path.write_bytes(gzip.compress(b"0 1\n1 2\n"))
    g = load_edge_list(str(path))
    assert g == load_edge_list(io.BytesIO(b"0 1\n1 2\n"))
    assert g == load_edge_list(io.StringIO("0 1\n1 2\n"))


def test_reverse_adjacency_mirrors_forward():
    g = heavy_tailed_digraph(200, 1500, seed=3)
    fwd = {(u, int(v)) for u in range(g.n) for v in g.out_neighbors(u)[0]}
    rev = {(int(u), v) for v in range(g.n) for u in g.in_neighbors(v)[0]}
    assert fwd == rev == set(zip(g.src.tolist(), g.dst.tolist()))
    assert g.in_degree.sum() == g.out_degree.sum() == g.m


def test_wc_sums_to_one_and_is_lt_compatible():
    g = heavy_tailed_digraph(300, 2000, seed=5)
    sums = g.in_weight_sums
    has_in = g.in_degree > 0
    assert np.allclose(sums[has_in], 1.0, atol=1e-9, rtol=0)
    assert np.all(sums[~has_in] == 0)
    assert g.lt_compatible


def test_not_lt_compatible():
    g = from_edges(3, [(0, 2, 0.7), (1, 2, 0.7)])
    assert not g.lt_compatible


def test_graph_is_immutable():
    g = from_edges(2, [(0, 1, 0.5)])
    with pytest.raises(ValueError):
        g.p[0] = 0.9


def test_weighted_cascade_copy():
    g = from_edges(3, [(0, 2, 0.9), (1, 2, 0.9), (0, 1, 0.2)])
    assert weighted_cascade(g).p.tolist() == [0.5, 0.5, 1.0]


def test_binary_cache_round_trip(tmp_path):
    g = load_edge_list(b"4 8\n8 15\n15 4\n16 23\n")
    path = os.path.join(tmp_path, "g.npz")
    g.save(path)
    h = Graph.load(path)
    assert h == g
    assert np.array_equal(h.in_p, g.in_p) and np.array_equal(h.out_idx, g.out_idx)


edge_lists = st.lists(
    st.tuples(st.integers(0, 40), st.integers(0, 40), st.floats(0, 1, allow_nan=False)),
    min_size=1,
    max_size=60,
    unique_by=lambda e: (e[0], e[1]),
)


@settings(max_examples=100, deadline=None)
@given(edge_lists)
def test_export_reload_round_trip(edges):
    text = "".join(f"{u} {v} {p!r}\n" for u, v, p in edges).encode()
    g = load_edge_list(text, weighting="explicit")
    assert load_edge_list(g.to_edge_list().encode(), weighting="explicit") == g


def test_uniform_costs():
    g = from_edges(5, [(0, 1)])
    c = assign_costs(g, "uniform", seed=7)
    assert c.costs.tolist() == [1.0] * 5
    assert c.is_uniform
    assert c([0, 3, 4]) == 3.0


def test_random_costs_deterministic_and_in_range():
    g = heavy_tailed_digraph(500, 1000, seed=0)
    a = assign_costs(g, "random", seed=7)
    b = assign_costs(g, "random", seed=7)
    assert np.array_equal(a.costs, b.costs)
    assert np.all((a.costs > 0) & (a.costs <= 1))
    assert not a.is_uniform


def test_random_costs_depend_on_seed():
    g = from_edges(8, [(0, 1)])
    assert not np.array_equal(assign_costs(g, "random", 7).costs, assign_costs(g, "random", 8).costs)


def test_random_costs_roughly_uniform():
    g = from_edges(20000, [(0, 1)])
    c = assign_costs(g, "random", seed=11).costs
    assert abs(c.mean() - 0.5) < 4 * np.sqrt(1 / 12 / c.size)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 9), max_size=10, unique=True), st.integers(0, 2**63))
def test_cost_additivity(nodes, seed):
    g = from_edges(10, [(0, 1)])
    c = assign_costs(g, "random", seed)
    assert c(nodes) == pytest.approx(sum(c.costs[u] for u in nodes), rel=1e-12, abs=0)


@pytest.mark.skipif(not os.environ.get("SEEDSELECT_WIKI_VOTE"), reason="set SEEDSELECT_WIKI_VOTE to the SNAP file")
def test_wiki_vote_table_stats():
    g = load_edge_list(os.environ["SEEDSELECT_WIKI_VOTE"])
    assert round(g.n / 1000, 1) == 7.1
    assert round(g.m / 1000, 1) == 103.7
    assert round(2 * g.m / g.n, 1) == 29.1
