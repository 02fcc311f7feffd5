import random
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import _oracles as oracle
from lsqt import (
    Graph,
    NotARemainderEdgeError,
    NotConnectedError,
    build_bfs_tree,
    build_comb_tree,
    build_lst,
    grid_graph,
    preprocess,
    random_connected_graph,
    segment_all,
    segment_edge,
)
from lsqt.tree import SpanningTree, build_bfs_forest


def path_graph(n):
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)])


def star_graph(leaves):
    return Graph.from_edges([(0, i) for i in range(1, leaves + 1)])


def tree_from_parent(parent):
    n = len(parent)
    g = Graph.from_edges(
        [(v, parent[v]) for v in range(n) if parent[v] != v], n=n
    )
    return build_lst(g, 0)  # tree input: the unique spanning tree


def test_preprocess_path_depths():
    t = build_bfs_tree(path_graph(3), root=0)
    rt = preprocess(t)
    assert [rt.depth_of(v) for v in range(3)] == [0, 1, 2]


def test_preprocess_star_depths():
    t = build_bfs_tree(star_graph(4), root=0)
    rt = preprocess(t)
    assert [rt.depth_of(v) for v in range(1, 5)] == [1, 1, 1, 1]


def test_preprocess_depths_match_bfs_oracle():
    rng = random.Random(1)
    parent = oracle.random_tree_parent(rng, 7)
    t = tree_from_parent(parent)
    rt = preprocess(t)
    adj = oracle.tree_adjacency(7, t.tree_edges())
    dist = oracle.bfs_distances(adj, t.root)
    assert [rt.depth_of(v) for v in range(7)] == dist
    assert rt.depth_of(t.root) == 0


def test_lca_identity_and_root():
    t = build_bfs_tree(path_graph(5), root=0)
    rt = preprocess(t)
    assert rt.lca(3, 3) == 3
    for v in range(5):
        assert rt.lca(0, v) == 0
        assert rt.lca(v, 0) == 0


def test_lca_matches_ancestor_oracle_large_tree():
    rng = random.Random(42)
    parent = oracle.random_tree_parent(rng, 10_000)
    t = tree_from_parent(parent)
    rt = preprocess(t)
    tp = t.parent.tolist()
    for _ in range(1000):
        u = rng.randrange(10_000)
        v = rng.randrange(10_000)
        assert rt.lca(u, v) == oracle.ancestor_set_lca(tp, u, v)


def test_lca_cross_component_errors():
    g = Graph.from_edges([(0, 1), (2, 3)])
    rt = preprocess(build_bfs_forest(g))
    with pytest.raises(NotConnectedError):
        rt.lca(0, 3)


def test_lca_scratch_is_pure():
    t = build_bfs_tree(grid_graph(5, 5), root=0)
    rt = preprocess(t)
    first = rt.lca(20, 4)
    others = [rt.lca(7, 23), rt.lca(20, 4), rt.lca(4, 20)]
    assert others[1] == first
    assert others[2] == first
    # interleaving with other queries never changes answers
    assert rt.lca(20, 4) == first


def test_clone_for_worker_shares_tree_not_scratch():
    t = build_bfs_tree(grid_graph(4, 4), root=0)
    rt = preprocess(t)
    clone = rt.clone_for_worker()
    assert clone.lca(5, 10) == rt.lca(5, 10)
    assert clone._parent is rt._parent
    assert clone._mark is not rt._mark


def test_segment_edge_triangle(triangle):
    t = SpanningTree.from_edge_ids(triangle, [0, 1])  # {0-1, 1-2}, root 0
    entry = segment_edge(preprocess(t), (0, 2))
    assert entry.path == (0, 1, 2)
    assert entry.segments == ((0, 1), (1, 2))
    assert entry.segment_count == 2
    assert entry.lca == 0


def test_segment_edge_four_cycle(four_cycle):
    ids = [four_cycle.edge_index()[e] for e in [(0, 1), (1, 2), (2, 3)]]
    t = SpanningTree.from_edge_ids(four_cycle, ids)
    entry = segment_edge(preprocess(t), (0, 3))
    assert entry.path == (0, 1, 2, 3)
    assert entry.segment_count == 3


def test_segment_edge_comb_rightmost(grid8):
    t = build_comb_tree(grid8, 8, 8)
    entry = segment_edge(preprocess(t), (7, 15))
    assert entry.segment_count == 15
    assert entry.segment_count == oracle.tree_path_length(
        64, t.tree_edges(), 7, 15
    )


def test_segment_edge_rejects_tree_edge(triangle):
    t = SpanningTree.from_edge_ids(triangle, [0, 1])
    with pytest.raises(NotARemainderEdgeError):
        segment_edge(preprocess(t), (0, 1))


def test_segment_edge_rejects_non_edge(grid8):
    t = build_lst(grid8, 0)
    with pytest.raises(NotARemainderEdgeError):
        segment_edge(preprocess(t), (0, 63))


def test_segment_all_tree_input_empty():
    g = path_graph(6)
    seg = segment_all(preprocess(build_lst(g, 0)))
    assert len(seg) == 0
    assert seg.total_segments == 0


def test_segment_all_triangle(triangle):
    seg = segment_all(preprocess(build_lst(triangle, 0)))
    assert len(seg) == 1
    assert seg.total_segments == 2


def test_segment_all_email_scale_entry_count():
    g = random_connected_graph(1133, 5451, seed=0)
    seg = segment_all(preprocess(build_lst(g, 0)))
    assert len(seg) == 5451 - 1132


def test_segmentation_contiguity_and_length_identity():
    g = random_connected_graph(60, 400, seed=8)
    t = build_lst(g, 0)
    rt = preprocess(t)
    seg = segment_all(rt)
    depth = t.depth
    for entry in seg:
        u, v = entry.edge
        assert entry.path[0] == u
        assert entry.path[-1] == v
        for (a1, b1), (a2, b2) in zip(entry.segments, entry.segments[1:]):
            assert b1 == a2  # the walk is contiguous
        for a, b in entry.segments:
            assert t.is_tree_edge(a, b)
        ell = entry.lca
        assert entry.segment_count == depth[u] + depth[v] - 2 * depth[ell]
        assert entry.segment_count >= 2


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_segment_entries_match_single_queries(seed):
    rng = random.Random(seed)
    n, edges = oracle.random_connected_edge_set(rng, n_lo=4, n_hi=10, m_cap=16)
    g = Graph.from_edges(edges, n=n)
    t = build_lst(g, seed=seed)
    rt = preprocess(t)
    seg = segment_all(rt)
    for entry in seg:
        assert segment_edge(rt, entry.edge) == entry


def test_segment_all_wrong_graph(grid8):
    t = build_lst(grid8, 0)
    with pytest.raises(ValueError):
        segment_all(preprocess(t), grid_graph(4, 4))


def _timed_segment_all(tree, repeats=3):
    rt = preprocess(tree)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        segment_all(rt)
        best = min(best, time.perf_counter() - t0)
    return best


def test_query_cost_tracks_total_stretch():
    # same remainder-edge count, doubled per-edge stretch: wall time should
    # roughly double (not stay flat, which would mean O(n)-per-query)
    n = 20_001
    chords = 4000
    base = [(i, i + 1) for i in range(n - 1)]

    def with_chords(d):
        extra = [(40 + i * 4, 40 + i * 4 + d) for i in range(chords)]
        return Graph.from_edges(base + extra, n=n)

    g1, g2 = with_chords(10), with_chords(20)
    # force the tree to be the path itself (path edges come first)
    t1 = SpanningTree.from_edge_ids(g1, range(n - 1))
    t2 = SpanningTree.from_edge_ids(g2, range(n - 1))
    s1 = _timed_segment_all(t1)
    s2 = _timed_segment_all(t2)
    ratio = s2 / s1
    assert ratio < 3.0
    assert ratio > 1.15
