import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lsqt import (
    EdgeListParseError,
    EmptyGraphError,
    Graph,
    connected_components,
    grid_graph,
    parse_edge_list,
    random_connected_graph,
    to_edge_list_text,
)


def test_parse_triangle():
    g = parse_edge_list("0 1\n1 2\n2 0")
    assert (g.n, g.m) == (3, 3)
    assert g.edge_list() == [(0, 1), (1, 2), (0, 2)]


def test_parse_collapses_duplicates_and_loops():
    g = parse_edge_list("a b\nb a\na a")
    assert (g.n, g.m) == (2, 1)
    assert g.labels == ["a", "b"]


def test_parse_comments_and_blanks():
    g = parse_edge_list("# header\n\n0 1  # inline\n  \n1 2\n")
    assert (g.n, g.m) == (3, 2)


def test_parse_labels_dense_first_appearance():
    g = parse_edge_list("5 7\n7 9")
    assert g.n == 3
    assert g.labels == ["5", "7", "9"]
    assert g.edge_list() == [(0, 1), (1, 2)]


def test_parse_malformed_line_reports_number():
    with pytest.raises(EdgeListParseError) as exc:
        parse_edge_list("0 1\n0 1 2\n")
    assert "line 2" in str(exc.value)
    assert exc.value.line_number == 2


def test_parse_rejects_empty():
    with pytest.raises(EmptyGraphError):
        parse_edge_list("# nothing here\n")
    with pytest.raises(EmptyGraphError):
        parse_edge_list("x x\n")  # only a self-loop


def test_parse_serialize_idempotent():
    text = "b c\na b\nc a\nd a\n"
    g1 = parse_edge_list(text)
    text2 = to_edge_list_text(g1)
    g2 = parse_edge_list(text2)
    assert g1.edge_list() == g2.edge_list()
    assert g1.labels == g2.labels
    assert to_edge_list_text(g2) == text2


def test_adjacency_symmetric_and_sorted(triangle):
    for v in range(triangle.n):
        nbrs = list(triangle.neighbors(v))
        assert nbrs == sorted(nbrs)
        for w in nbrs:
            assert v in triangle.neighbors(w)


@given(
    st.lists(
        st.tuples(st.integers(0, 12), st.integers(0, 12)),
        min_size=1,
        max_size=40,
    )
)
def test_handshake_sum(pairs):
    g = Graph.from_edges(pairs)
    if g.n == 0:
        return
    assert sum(g.degree(v) for v in range(g.n)) == 2 * g.m


def test_connected_components_triangle(triangle):
    assert connected_components(triangle) == [[0, 1, 2]]


def test_connected_components_two_edges():
    g = Graph.from_edges([(0, 1), (2, 3)])
    assert connected_components(g) == [[0, 1], [2, 3]]


def test_connected_components_grid(grid8):
    comps = connected_components(grid8)
    assert len(comps) == 1
    assert len(comps[0]) == 64


@pytest.mark.parametrize(
    "rows,cols,n,m",
    [(2, 2, 4, 4), (8, 8, 64, 112), (1, 5, 5, 4), (3, 3, 9, 12)],
)
def test_grid_graph_sizes(rows, cols, n, m):
    g = grid_graph(rows, cols)
    assert (g.n, g.m) == (n, m)


def test_grid_graph_formula_all_small():
    for r in range(1, 21):
        for c in range(1, 21):
            g = grid_graph(r, c)
            assert g.m == r * (c - 1) + c * (r - 1)


def test_grid_graph_rejects_zero():
    with pytest.raises(ValueError):
        grid_graph(0, 3)


def test_random_connected_graph_counts():
    g = random_connected_graph(50, 120, seed=3)
    assert (g.n, g.m) == (50, 120)
    assert len(connected_components(g)) == 1
    # deterministic for a fixed seed
    g2 = random_connected_graph(50, 120, seed=3)
    assert g.edge_list() == g2.edge_list()


def test_from_edges_canonicalizes():
    g = Graph.from_edges([(3, 1), (1, 3), (2, 2), (0, 1)])
    assert g.edge_list() == [(1, 3), (0, 1)]
    assert g.n == 4


@settings(max_examples=30)
@given(st.integers(1, 6), st.integers(1, 6))
def test_grid_always_connected(r, c):
    assert len(connected_components(grid_graph(r, c))) == 1
